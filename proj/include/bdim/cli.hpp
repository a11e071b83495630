#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bdim::cli {

/// Process exit statuses shared by every subcommand.
enum ExitStatus : int {
  kSuccess = 0,
  kFailed = 1,  // verification failed, or Unsat where Sat was required
  kUsage = 2,
  kIo = 3,      // I/O, parse, or size-mismatch error
  kSolver = 4,  // solver failure or guard exceeded
};

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// timings and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bdim::cli
