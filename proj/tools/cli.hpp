#pragma once

#include <iosfwd>

namespace uilog::cli {

/// Exit codes: 0 success, 1 operational error, 2 validation findings.
enum ExitCode : int { kOk = 0, kFailure = 1, kViolations = 2 };

/// Runs one `uilog` invocation. Data goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool color = false);

}  // namespace uilog::cli
