#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kkcalc {

// Exit codes of run_command.
constexpr int kExitAffirmative = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInputError = 2;

/// Parses `args` (without the program name), runs one subcommand and writes
/// its report to `out`; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kkcalc
