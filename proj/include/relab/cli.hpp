#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relab {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitBoundViolation = 2,
  kExitPrecisionFailure = 3,
};

/// Runs one command line (without the program name). Normal output goes to
/// `out` unless --output names a file; diagnostics go to `err`.
///
/// Subcommands: catalog, pi, expand, verify, check-lemmas, ak-table, terms-needed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Default working digits: RELAB_DEFAULT_DIGITS if set to a positive integer, else 30.
unsigned default_digits();

}  // namespace relab
