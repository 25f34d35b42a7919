#pragma once

namespace skillguard::cli {

inline constexpr int kExitClean = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFindings = 2;
inline constexpr int kExitUsage = 64;

/// Parses argv, dispatches one subcommand and returns the process exit code.
int run(int argc, char** argv);

}  // namespace skillguard::cli
