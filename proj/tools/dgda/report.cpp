#include "report.hpp"

#include <iomanip>

namespace dgda::cli {

namespace {

constexpr std::size_t kListLimit = 40;

std::string window_string(const Truncation& t) {
  return "N=" + std::to_string(t.N) + " d_x=" + std::to_string(t.poly_degree) + " r=" + std::to_string(t.order) +
         " L=" + std::to_string(t.word_length);
}

}  // namespace

void RunReport::check(std::string name, bool pass, std::string detail) {
  check(std::move(name), pass ? Verdict::Pass : Verdict::Fail, std::move(detail));
}

void RunReport::check(std::string name, Verdict v, std::string detail) {
  checks.push_back({std::move(name), v, std::move(detail)});
}

int RunReport::verdict_code(bool allow_flags) const {
  bool inconclusive = false;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::Fail) return 1;
    inconclusive = inconclusive || c.verdict == Verdict::Inconclusive;
  }
  return inconclusive && !allow_flags ? 1 : 0;
}

Json summarize(const Dga& a, const PrintNames& names) {
  Json j;
  j["name"] = a.name();
  j["generator_count"] = a.generators().size();
  Json by_degree = Json::object();
  std::map<int, std::size_t> counts;
  for (const auto& g : a.generators()) ++counts[g.degree];
  for (const auto& [d, c] : counts) by_degree[std::to_string(d)] = c;
  j["by_degree"] = by_degree;
  j["relations"] = a.relations().size();
  if (a.generators().size() <= kListLimit) {
    Json gens = Json::array();
    for (const auto& g : a.generators()) {
      Json e;
      e["label"] = g.name();
      e["degree"] = g.degree;
      e["kind"] = std::string(kind_name(g.kind));
      e["d"] = to_string(a.differential(g), names);
      if (auto cap = a.order_cap(g)) e["order_cap"] = *cap;
      gens.push_back(e);
    }
    j["generators"] = gens;
  }
  return j;
}

Json table_json(const HomologyReport& h) {
  Json rows = Json::array();
  for (const auto& d : h.degrees) {
    Json r;
    r["degree"] = d.degree;
    r["slice"] = d.slice;
    r["ker"] = d.ker;
    r["im"] = d.im;
    r["h"] = d.h;
    r["flagged"] = d.flagged;
    rows.push_back(r);
  }
  return rows;
}

Json RunReport::to_json() const {
  Json j;
  j["command"] = command;
  if (!argument.empty()) j["argument"] = argument;
  j["input"] = input;
  if (windowed) {
    j["window"] = {{"N", window.N},
                   {"poly_degree", window.poly_degree},
                   {"order", window.order},
                   {"word_length", window.word_length},
                   {"probe_margin", window.probe_margin}};
  }
  j["objects"] = objects;
  if (!stages.empty()) j["stages"] = stages;
  Json tabs = Json::array();
  for (const auto& t : tables) tabs.push_back({{"title", t.title}, {"rows", table_json(t.homology)}});
  j["tables"] = tabs;
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json e;
    e["name"] = c.name;
    e["verdict"] = verdict_name(c.verdict);
    if (!c.detail.empty()) e["detail"] = c.detail;
    cs.push_back(e);
  }
  j["checks"] = cs;
  if (!notes.empty()) j["notes"] = notes;
  if (!error.empty()) {
    Json e;
    e["message"] = error;
    if (!error_generator.empty()) e["generator"] = error_generator;
    if (!error_residue.empty()) e["residue"] = error_residue;
    j["error"] = e;
  }
  j["exit_code"] = exit_code;
  j["timing_ms"] = timing_ms;
  return j;
}

void RunReport::print(std::ostream& out) const {
  out << "dgda " << command;
  if (!argument.empty()) out << " " << argument;
  out << "  [" << input << "]\n";
  if (windowed) out << "window  " << window_string(window) << "\n";
  for (const auto& o : objects) {
    out << "algebra " << o["name"].get<std::string>() << ": " << o["generator_count"].get<std::size_t>()
        << " generators";
    std::string sep = " (";
    for (const auto& [deg, c] : o["by_degree"].items()) {
      out << sep << "deg " << deg << ": " << c.get<std::size_t>();
      sep = ", ";
    }
    if (sep == ", ") out << ")";
    out << "\n";
    if (o.contains("generators"))
      for (const auto& g : o["generators"])
        out << "  " << std::left << std::setw(12) << g["label"].get<std::string>() << std::right << " |"
            << g["degree"].get<int>() << "|  d = " << g["d"].get<std::string>() << "\n";
  }
  for (const auto& s : stages) {
    out << "stage " << s["k"].get<int>() << ": +" << s["added"].get<std::size_t>() << " generators";
    if (s.contains("pairs")) out << ", " << s["pairs"].get<std::size_t>() << " pairs";
    out << "\n";
  }
  for (const auto& t : tables) {
    out << t.title << "\n";
    out << "  " << std::setw(3) << "n" << std::setw(8) << "slice" << std::setw(8) << "ker" << std::setw(8) << "im"
        << std::setw(6) << "H" << "\n";
    for (const auto& d : t.homology.degrees) {
      out << "  " << std::setw(3) << d.degree << std::setw(8) << d.slice << std::setw(8) << d.ker << std::setw(8)
          << d.im << std::setw(6) << (d.flagged ? std::string("?") : std::to_string(d.h)) << "\n";
    }
  }
  for (const auto& c : checks) {
    out << "check " << std::left << std::setw(34) << c.name << std::right << " " << verdict_name(c.verdict);
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << "\n";
  }
  for (const auto& n : notes) out << "note: " << n << "\n";
  if (!error.empty()) {
    out << "error: " << error << "\n";
    if (!error_generator.empty()) out << "  generator: " << error_generator << "\n";
    if (!error_residue.empty()) out << "  residue: " << error_residue << "\n";
  }
  out << "exit " << exit_code << "\n";
}

}  // namespace dgda::cli
