#pragma once

#include <iosfwd>

namespace pbw {

/// Exit statuses of the command line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitResource = 3,
  kExitMath = 4,
};

/// Runs the `pbw` command line; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pbw
