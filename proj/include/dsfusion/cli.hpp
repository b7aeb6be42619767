#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dsfusion::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kValidationError = 2,
  kTotalConflict = 3,
  kAnomaly = 4,
  kTheoremViolation = 5,
};

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out` unless redirected with -o; diagnostics and summaries go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dsfusion::cli
