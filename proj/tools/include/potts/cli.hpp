#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace potts::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInfeasible = 3,
  kBudget = 4,
  kInternal = 5,
};

// Runs one subcommand. `args` excludes the program name. Results go to
// `out`, logs and error messages to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace potts::cli
