#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eppa {

/// Exit codes of the `eppa` tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailed = 1,    // a requested predicate or a verification failed
  kExitResource = 2,  // vertex cap or search budget exceeded
  kExitUsage = 3,     // unreadable input or bad command line
};

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eppa
