#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bsc::cli {

enum ExitStatus : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidConfig = 2,
  kConvergenceFailure = 3,
};

/// Runs one command; args excludes the program name. The report goes to `out` (or to
/// --out FILE), diagnostics and warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bsc::cli
