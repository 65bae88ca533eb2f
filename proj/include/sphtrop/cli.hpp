#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sphtrop::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kPrecisionExhausted = 2,
  kCrossCheckFailed = 3,
};

/// Runs one command line (args excludes the program name). Results go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sphtrop::cli
