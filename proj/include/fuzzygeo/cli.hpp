#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fuzzygeo {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitInternal = 2 };

/// Entry point of the `fuzzygeo` executable. args[0] is the program name.
/// Console output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzygeo
