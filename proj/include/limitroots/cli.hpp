#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace limitroots {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitAuditViolation = 3;

// Entry point of the `limitroots` tool. args[0] is the program name.
// Subcommands: enum, limits, classify, audit, render. Errors are reported on
// `err` as a single JSON object {"error": <code>, "message": <text>}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace limitroots
