#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdissect::cli {

/// Exit codes: all checks passed / command succeeded, a verification failed
/// or a congruence was refuted, usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Run the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdissect::cli
