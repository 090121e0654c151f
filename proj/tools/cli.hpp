#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pipecalc::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationError = 1,
  kCounterexample = 2,
};

/// Runs one pipecalc invocation. `args` excludes the program name. Reports go
/// to `out`, diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pipecalc::cli
