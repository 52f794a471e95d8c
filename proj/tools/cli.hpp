#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace drsit::cli {

/// Exit-code contract shared by every subcommand.
enum ExitCode : int { kOk = 0, kConfigError = 2, kIoError = 3, kDegenerateData = 4 };

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace drsit::cli
