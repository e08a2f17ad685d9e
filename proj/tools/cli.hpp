#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace reflekt::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kNumeric = 3,
};

/// Parses argv (argv[0] is the program name) and dispatches to
/// build | verify | oracle | export | stats.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace reflekt::cli
