#pragma once

#include <ostream>

namespace umbra::cli {

/// Exit codes.
enum ExitCode : int { ok = 0, internal = 1, parse_failure = 2, precondition = 3, verification_failure = 4 };

/// Runs the command line; payload goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace umbra::cli
