#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace nwr {

// Exit codes of the command-line tool.
inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

// Runs one subcommand. `args` excludes the program name. Results go to `out`
// as key=value lines; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace nwr
