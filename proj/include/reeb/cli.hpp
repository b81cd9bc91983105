#pragma once

#include <iosfwd>

namespace reeb {

/// Exit codes: 0 ok, 1 usage or parse error, 2 body unsupported by the
/// subcommand, 3 numerical non-convergence.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitUnsupported = 2, kExitNonConvergence = 3 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace reeb
