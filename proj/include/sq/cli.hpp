#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sq {

/// Exit codes of the command-line tool.
enum ExitCode : int { ExitOk = 0, ExitInvalid = 1, ExitUsage = 2, ExitBudget = 3 };

/// Runs one sqtool command. `args` excludes the program name. Results go
/// to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sq
