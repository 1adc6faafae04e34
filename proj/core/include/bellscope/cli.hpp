#pragma once

namespace bellscope::cli {

/// Exit codes shared by every subcommand.
enum ExitCode {
  kOk = 0,
  kUsageOrParse = 1,
  kNumericalFailure = 2,
  kPreconditionViolation = 3,
  kEnumerationGuard = 4,
};

/// Entry point behind the `bellscope` binary. Reports go to stdout,
/// diagnostics to stderr.
int run(int argc, const char* const* argv);

}  // namespace bellscope::cli
