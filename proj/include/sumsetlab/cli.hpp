#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sumsetlab {

// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitNotMet = 1,    // a conditional statement's hypothesis fails on this input
    kExitViolation = 2, // an invariant that should always hold was found broken
    kExitUsage = 3,     // bad arguments, unreadable or malformed input
};

/// Parses `args` (without the program name), runs the subcommand and writes
/// the report to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sumsetlab
