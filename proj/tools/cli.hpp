#pragma once

#include <ostream>

namespace sublevel::cli {

enum ExitCode : int { kPass = 0, kViolation = 1, kUsage = 2, kNumerical = 3 };

/// Entry point of the `sublevel` command; writes results to `out` and
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sublevel::cli
