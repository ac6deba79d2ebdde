#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace normsys::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;

/// Runs one normctl invocation. `args` excludes the program name. Reports
/// go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace normsys::cli
