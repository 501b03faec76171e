#pragma once

#include <stdexcept>
#include <string>

namespace varibase {

/// Iterative inversion failed to reach tolerance; carries the final residual.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Geometry admits no valid construction (e.g. baseline parallel to the
/// optical axis in rectification).
class DegenerateGeometryError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Query outside a table/interval; message names the valid range.
class RangeError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The synchronization bound has no solution (b*f <= k*Z): no velocity keeps
/// the disparity error under k at that depth/baseline.
class UnboundedRegimeError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed configuration or data file; message carries the first violation.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace varibase
