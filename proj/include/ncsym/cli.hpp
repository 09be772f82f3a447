#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncsym {

enum ExitCode : int {
    kExitPass = 0,
    kExitUsage = 2,
    kExitInfeasible = 3,
    kExitStageFailure = 4,
};

/// Entry point of the `ncsym` tool; reports go to `out`, diagnostics to `err`.
/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncsym
