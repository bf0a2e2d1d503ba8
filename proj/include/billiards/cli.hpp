#pragma once

#include <iosfwd>

namespace billiards::cli {

enum ExitCode : int {
  kAllHold = 0,
  kViolation = 1,
  kUsage = 2,
  kNoConvergence = 3,
};

// Entry point of the billiard_beta tool. Subcommands: domain, beta, verify,
// sweep, toy. Normal output goes to `out` (or the --out file), diagnostics
// to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace billiards::cli
