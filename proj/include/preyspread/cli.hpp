#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "preyspread/error.hpp"

namespace preyspread {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitRuntime = 3 };

int exit_code_for(ErrorCode code) noexcept;

/// Subcommands: speeds, check, wave, simulate, ode, analyze, sweep.
/// `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace preyspread
