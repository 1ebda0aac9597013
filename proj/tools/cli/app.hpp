#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ubdm::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kNumericalError = 3,
  kTruncationError = 4,
};

//! Full command-line entry point; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ubdm::cli
