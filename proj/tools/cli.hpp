#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ramsey::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kSearchExhausted = 2,
  kUsage = 64,
  kParse = 65,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, progress and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ramsey::cli
