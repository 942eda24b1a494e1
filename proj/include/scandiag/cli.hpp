#pragma once

#include <iosfwd>

namespace scandiag {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,      // config or argument error
    kExitMissingData = 2,
    kExitMalformed = 3,
};

/// Entry point of the `scandiag` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace scandiag
