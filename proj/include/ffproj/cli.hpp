#pragma once

#include <iosfwd>

namespace ffproj::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable holding the default subspace enumeration budget.
inline constexpr const char* kBudgetEnv = "FFPROJ_BUDGET";

/// Parses and runs one subcommand. Reports go to `out` (or --output), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ffproj::cli
