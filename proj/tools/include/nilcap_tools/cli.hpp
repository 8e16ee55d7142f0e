#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilcap::tools {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,  // NOT_CAPABLE under --strict, or a failed check
  kExitInputError = 2,
  kExitBudget = 3,
};

/// Runs one command line (without the program name). Reports go to out,
/// diagnostics and timing to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilcap::tools
