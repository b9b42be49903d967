#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cyclew::cli {

enum ExitCode : int {
  kOk = 0,
  kChecksFailed = 1,
  kValidationError = 2,
  kNumericError = 3,
};

// Parses argv (argv[0] is the program name), runs the subcommand and returns the
// process exit code. Reports go to `out` unless --out is given; diagnostics to `err`.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Same, with the program name supplied.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyclew::cli
