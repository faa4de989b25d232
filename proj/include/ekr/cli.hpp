#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ekr {

enum ExitCode : int { kExitOk = 0, kExitCounterexample = 1, kExitUsage = 2 };

/// Runs one command line (without the program name). Reports go to `out`, diagnostics
/// to `err`. Returns 0 when every check passed, 1 on a counterexample or failed check,
/// 2 on a usage or configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ekr
