#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aasum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

/// Runs the command line `args` (args[0] is the program name). Output and
/// diagnostics go to `out` and `err`; the return value is the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aasum::cli
