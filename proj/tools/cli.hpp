#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace edgerec::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInvalidData = 2,
    kNumericFailure = 3,
};

/// Runs the command line `args` (without the program name). Diagnostics go
/// to `err`, help text to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace edgerec::cli
