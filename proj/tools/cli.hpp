#pragma once

#include <iosfwd>

namespace qaoa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitGeneration = 3;
inline constexpr int kExitResource = 4;

/// Parses argv and runs one subcommand. Reports go to --out or `out`; the
/// one-line summary and diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qaoa::cli
