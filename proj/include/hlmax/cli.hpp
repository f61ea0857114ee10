#pragma once

#include <iosfwd>

namespace hlmax {

enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,
  kExitUsage = 2,
  kExitCapExceeded = 3,
  kExitDimension = 4,
};

/// Runs the `hlmax` command line. Data goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hlmax
