#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dpercol/degrees.hpp"

namespace dpercol::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_runtime = 2;

inline constexpr std::string_view version = "dpercol 1.0.0";

/// Runs the command line `args` (args[0] is the program name). Machine-readable
/// output goes to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// A named family (`poisson:2`, `file:path`, ...) or a bare file path.
DegreeDistribution resolve_distribution(const std::string &text);

} // namespace dpercol::cli
