#pragma once

#include <ostream>

namespace qinvar::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNegative = 2,  // no quantum model exists, or verification failed
  kIo = 3,
  kSchema = 4,
  kIdentityBreach = 5,
};

/// Runs `qinvar <command> ...` with the given streams. Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qinvar::cli
