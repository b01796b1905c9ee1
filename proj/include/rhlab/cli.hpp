#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rhlab {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2, kExitIo = 3 };

/// Entry point of the rhlab command-line tool. args excludes the program name.
/// Reports go to out (or --out), logs and summary lines to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rhlab
