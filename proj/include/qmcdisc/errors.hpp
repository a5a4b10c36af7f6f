#pragma once

#include <stdexcept>
#include <string>

namespace qmc {

/// Input violates an operation's precondition (bad digit, wrong matrix kind,
/// non-prime base, ...).
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A permutation table or linear scrambling that is not a bijection.
struct NotABijection : InvalidInput {
  using InvalidInput::InvalidInput;
};

/// A value does not fit the requested digit count.
struct DigitOverflow : std::overflow_error {
  using std::overflow_error::overflow_error;
};

/// A configured resource cap (points, breakpoints, time) would be exceeded.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qmc
