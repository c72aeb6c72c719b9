#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cshift::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kIoError = 2,
  kSaturated = 3,
  kNumericFailure = 4,
  kPrecondition = 5,
};

/// Runs the `cshift` command line with argv-style arguments (args[0] is the
/// program name). Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Expands "a", "a,b,c" or the inclusive grid "start:stop:step".
std::vector<double> parse_alpha_grid(const std::string& text);

}  // namespace cshift::cli
