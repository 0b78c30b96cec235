#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wgcl {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_error = 1,     ///< evaluation failed (budget, overflow, certification)
  exit_usage = 2,     ///< bad flags, unreadable file, parse error
  exit_inexact = 3,   ///< some reported value is only a bound
  exit_mismatch = 4,  ///< comparison disagreed or a check failed
};

/// Runs the `wgcl` tool on `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace wgcl
