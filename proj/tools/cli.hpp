#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twinforge::cli {

/// Exit codes shared by every subcommand.
enum Exit : int { Holds = 0, Fails = 1, UsageError = 2, BudgetHit = 3 };

/// args excludes the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace twinforge::cli
