#pragma once

#include <stdexcept>

namespace srf {

/// Operand shapes do not fit together (non-square input, mismatched factors).
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (odd N, alpha too large, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Request would exceed the configured dense-size limits.
struct ResourceError : std::length_error {
  using std::length_error::length_error;
};

}  // namespace srf
