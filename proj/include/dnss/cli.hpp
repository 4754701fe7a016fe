#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dnss {

/// Exit codes of the command-line driver.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParse = 2,
  kExitPrecondition = 3,  // cap exhausted or a precondition failed
};

/// Runs one subcommand; JSON goes to `out`, error objects to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dnss
