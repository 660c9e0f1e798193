#pragma once

#include <iostream>

namespace cavur::cli {

/// Exit codes of the command-line driver.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInvariantViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Runs the full command-line interface. Streams are injectable so the
/// driver can be exercised in-process.
int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);

}  // namespace cavur::cli
