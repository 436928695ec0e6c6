#pragma once

#include <stdexcept>
#include <string>

namespace trisw {

/// Malformed or inconsistent configuration (unknown key, invariant violated).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output amplitude outside 0 <= v_m <= v_dc.
class ConstraintError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite numbers, divergence or a failed factorization.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace trisw
