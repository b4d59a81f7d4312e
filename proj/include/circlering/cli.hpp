#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace circlering::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2 };

/// Runs one command line (without the program name) and returns the exit code. Results go
/// to `out` as JSON lines; usage and input errors go to `err` as a JSON record
/// {"error": <code>, "message": ...}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circlering::cli
