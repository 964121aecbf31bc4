#pragma once

#include <ostream>
#include <string>

#include "problem.hpp"
#include "report.hpp"

namespace dgda::cli {

void cmd_factorize(Problem& p, const std::string& mode, RunReport& rep);
void cmd_homology(Problem& p, RunReport& rep);
void cmd_resolve(Problem& p, const std::string& kind, RunReport& rep);
void cmd_verify(Problem& p, const std::string& check, RunReport& rep);

// Entry point shared by the executable and the tests. Returns the exit code:
// 0 pass, 1 check failed, 2 parse error, 3 precondition failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dgda::cli
