#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dgda/algebra.hpp"

namespace dgda::cli {

// Names visible to an expression: generator labels and base variables.
struct Scope {
  int dim = 0;
  std::map<std::string, GenId> gens;
  std::vector<std::string> vars;  // empty: x1..xp
  std::function<AlgElem(const AlgElem&, const AlgElem&)> mul;  // free_mul when unset
};

// Sums of products of rationals, base variables and decorated generators:
//   3/2*x1*a[1,0]^2 - (b + c)*w
AlgElem parse_expr(std::string_view text, const Scope& scope);

}  // namespace dgda::cli
