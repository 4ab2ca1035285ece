#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epiladder {

/// Exit codes of the command-line tool.
enum class ExitCode : int {
  Ok = 0,
  Failure = 1,
  Usage = 2,
  Io = 3,
  Schema = 4,
  Inconsistent = 5,
  Config = 6,
  Empty = 7,
  Credentials = 8,
};

/// Runs one CLI invocation; `args` excludes the program name. Errors are
/// reported as a single `error kind=... code=... message="..."` line on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epiladder
