#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eloc::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNumerical = 2,
  kContractFailed = 3,
};

/// Runs the `eloc` command line. Output that is not redirected with --out
/// goes to `out`; diagnostics go to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eloc::cli
