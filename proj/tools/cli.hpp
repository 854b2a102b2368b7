#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace secidx::cli {

enum ExitCode : int {
  kOk = 0,
  kDataError = 1,
  kUsageError = 2,
  kVerificationFailed = 3,
};

/// Runs the command line `args` (without the program name). Documents go to
/// `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace secidx::cli
