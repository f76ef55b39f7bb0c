#pragma once

#include <string>
#include <vector>

namespace eisense::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kDataError = 3,
    kNumericalFailure = 4,
};

/// Runs the command line `args` (args[0] is the program name). Diagnostics go to stderr.
int run(const std::vector<std::string>& args);

}  // namespace eisense::cli
