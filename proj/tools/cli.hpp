#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entbound::cli {

enum ExitCode : int {
  kOk = 0,
  kAuditFailure = 1,
  kParseError = 2,
  kValidationError = 3,
  kDimensionError = 4,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entbound::cli
