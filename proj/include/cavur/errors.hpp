#pragma once

#include <stdexcept>

namespace cavur {

/// Thrown when a file cannot be opened, read, or parsed.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a quantity that is guaranteed by construction (trace
/// preservation, entropy identities, channel positivity) is violated
/// beyond numerical tolerance. Indicates a bug or corrupted input, not
/// a user error.
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cavur
