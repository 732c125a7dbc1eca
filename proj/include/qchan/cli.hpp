#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qchan::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kPreconditionError = 3,
  kNumericalError = 4,
};

/// Runs one command line (without the program name). Report output goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qchan::cli
