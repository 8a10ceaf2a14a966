#pragma once

#include <stdexcept>

namespace patgal {

/// Invalid or inconsistent experiment configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Breakdown of a numerical method (NaN, vanishing denominators, failed factorization).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace patgal
