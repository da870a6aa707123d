#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dioph {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

/// Runs one CLI invocation. args excludes the program name. The report goes
/// to out, diagnostics to err.
int run_cli(std::vector<std::string> const & args, std::ostream & out, std::ostream & err);

} // namespace dioph
