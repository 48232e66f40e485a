// Command-line front end. Exit codes: 0 satisfied or converged, 1 inequality
// violated, 2 domain or usage error, 3 convergence failure.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hardylab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitConvergence = 3;

/// Runs one command. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hardylab::cli
