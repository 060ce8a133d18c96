#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilforms {

enum ExitCode
{
  kHolds = 0,
  kFails = 1,
  kIndeterminate = 2,
  kUsage = 3
};

/// Runs one command line (without the program name) and returns the exit code.
int cli_dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace nilforms
