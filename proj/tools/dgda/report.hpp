#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "dgda/homology.hpp"
#include "problem.hpp"

namespace dgda::cli {

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::string detail;
};

struct Table {
  std::string title;
  HomologyReport homology;
};

struct RunReport {
  std::string command;
  std::string argument;
  std::string input;
  Truncation window;
  bool windowed = false;
  Json objects = Json::array();
  Json stages = Json::array();
  std::vector<Table> tables;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;
  std::string error;
  std::string error_generator;
  std::string error_residue;
  int exit_code = 0;
  double timing_ms = 0;

  void check(std::string name, bool pass, std::string detail = {});
  void check(std::string name, Verdict v, std::string detail = {});
  // 0 when every check passes; inconclusive checks fail unless allowed.
  int verdict_code(bool allow_flags) const;

  Json to_json() const;
  void print(std::ostream& out) const;
};

Json summarize(const Dga& a, const PrintNames& names);
Json table_json(const HomologyReport& h);

}  // namespace dgda::cli
