#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace annulus_green::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2, io_error = 3 };

/// Runs the command line `args` (program name excluded). Records go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace annulus_green::cli
