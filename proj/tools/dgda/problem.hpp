#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dgda/factorization.hpp"
#include "dgda/homology.hpp"
#include "dgda/koszul_tate.hpp"
#include "expr.hpp"
#include "json.hpp"

namespace dgda::cli {

using Json = nlohmann::ordered_json;

struct Overrides {
  std::optional<int> N, poly_degree, order, word_length, stages;
};

// A parsed problem file. Algebras and morphisms are built on first use so
// that commands only pay for (and fail on) what they touch.
class Problem {
 public:
  Problem(Json doc, const Overrides& ov);

  int dim() const { return dim_; }
  const Truncation& window() const { return window_; }
  int stages() const { return stages_; }
  const PrintNames& names() const { return print_; }
  const Json& section(const std::string& key) const;
  bool has_section(const std::string& key) const { return doc_.contains(key); }

  DgaPtr algebra(const std::string& name, bool validate = true);
  const Scope& scope_of(const std::string& algebra_name);
  DgaMorphism morphism(const std::string& name);
  // The single morphism when the name is omitted.
  std::string default_morphism() const;
  std::string default_algebra() const;

  AlgElem expr(const std::string& algebra_name, const Json& text);
  AlgElem expr_in(const DgaPtr& a, const Scope& base_scope, const Json& text) const;
  EnumerationBudget budget(const std::string& target);

 private:
  Json doc_;
  int dim_ = 0;
  Truncation window_;
  int stages_ = 2;
  PrintNames print_;
  std::map<std::string, DgaPtr> algebras_;
  std::map<std::string, Scope> scopes_;
  std::set<std::string> building_;
};

// Rejects keys outside `allowed`, naming the context.
void check_keys(const Json& obj, const std::vector<std::string>& allowed, const std::string& where);
Json load_json(const std::string& path);

}  // namespace dgda::cli
