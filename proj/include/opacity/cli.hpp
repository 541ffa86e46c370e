#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opacity::cli {

enum ExitCode : int { Positive = 0, Negative = 1, InputError = 2, BudgetExceeded = 3 };

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opacity::cli
