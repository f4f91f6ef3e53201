#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cpack::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckedFalse = 1,
  kUsageError = 2,
  kNumericalFailure = 3,
};

/// Runs one command line. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cpack::cli
