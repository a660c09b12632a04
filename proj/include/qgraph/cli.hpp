#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qgraph {

// Exit codes of the command-line tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_invalid_input = 2;
inline constexpr int exit_numerical = 3;

/// Entry point of the `qgraph` tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qgraph
