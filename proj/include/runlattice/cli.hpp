#pragma once

#include <iosfwd>

namespace runlattice {

/// Exit codes: 0 pass, 1 property failure, 2 usage error, 3 scale/structure error.
enum ExitCode : int { kExitPass = 0, kExitProperty = 1, kExitUsage = 2, kExitScale = 3 };

/// Runs one command line. Data goes to `out` (or --output), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace runlattice
