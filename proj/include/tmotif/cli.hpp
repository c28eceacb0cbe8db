#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tmotif {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes of `run_cli`.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitInput = 3, kExitGuard = 4 };

/// Runs one subcommand; `args` excludes the program name. Errors are
/// reported on `err` as a one-line JSON record.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tmotif
