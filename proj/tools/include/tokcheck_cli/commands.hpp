#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tokcheck::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kPropertyFalse = 1,  // a checked property failed; a witness was printed
  kUsage = 2,          // bad flags, unreadable or malformed input, library error
};

/// Runs `tokcheck` with `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tokcheck::cli
