#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace predistill {

inline constexpr const char* tool_version = "1.0.0";

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_usage = 2 };

// Entry point of the command-line tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace predistill
