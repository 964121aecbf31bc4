#pragma once

#include <string>
#include <vector>

namespace dgda::testing {

// One CLI run over a problem file in tests/fixtures and its expected exit code.
struct CliCase {
  std::string fixture;
  std::vector<std::string> args;
  int exit_code;

  std::string golden_name() const {
    std::string n = fixture;
    for (const auto& a : args) {
      if (a.rfind("--", 0) == 0 && a != "--allow-flags") continue;
      n += "." + (a == "--allow-flags" ? std::string("allow") : a);
    }
    return n + ".json";
  }
};

inline std::vector<CliCase> cli_corpus() {
  return {
      {"point_cof", {"factorize", "--mode", "cof-trivfib"}, 0},
      {"point_cof", {"factorize", "--mode", "minimal"}, 0},
      {"polynomial_empty_budget", {"factorize", "--mode", "trivcof-fib"}, 1},
      {"malformed", {"factorize"}, 2},
      {"unknown_field", {"homology"}, 2},
      {"disc", {"homology"}, 0},
      {"disc", {"factorize", "--mode", "minimal"}, 0},
      {"sphere", {"homology"}, 0},
      {"leaky", {"homology"}, 1},
      {"leaky", {"homology", "--allow-flags"}, 0},
      {"koszul_x", {"resolve", "--kind", "koszul"}, 0},
      {"koszul_xy", {"resolve", "--kind", "koszul"}, 0},
      {"kt_free_particle", {"resolve", "--kind", "koszul-tate"}, 0},
      {"kt_noether", {"resolve", "--kind", "koszul-tate"}, 0},
      {"kt_noether_bad", {"resolve", "--kind", "koszul-tate"}, 3},
      {"cofibrant_base", {"resolve", "--kind", "cofibrant"}, 0},
      {"exterior", {"verify", "--check", "rsda"}, 0},
      {"exterior", {"factorize", "--mode", "trivcof-fib"}, 0},
      {"square", {"verify", "--check", "square"}, 0},
      {"pushout", {"verify", "--check", "pushout"}, 0},
      {"corrupted", {"verify", "--check", "d-squared"}, 1},
      {"corrupted", {"homology"}, 3},
  };
}

}  // namespace dgda::testing
