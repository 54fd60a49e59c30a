#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace heisgeo::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one heisgeo command. `args` excludes the program name. Reports go to
/// `out` (or to --out PATH), diagnostics to `err`. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heisgeo::cli
