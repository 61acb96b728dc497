#pragma once

#include <ostream>
#include <span>
#include <string>

namespace nvxbar::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int
{
    kOk = 0,
    kUsage = 2,
    kDomain = 3,
};

/// Runs `nvxbar <subcommand> ...`. `args` excludes the program name.
/// Summaries go to `out`, diagnostics to `err`; tables are written to files.
int run(std::span<const std::string> args, std::ostream &out, std::ostream &err);

} // namespace nvxbar::cli
