#include <cmath>
#include <limits>

#include "varibase/kernels/kernels.hpp"

namespace varibase::kernels {
namespace {

void reciprocal_scaled_scalar(const double* in, const uint8_t* in_valid,
                              double scale, size_t n, double* out,
                              uint8_t* out_valid) {
  for (size_t i = 0; i < n; ++i) {
    if (in_valid[i] && in[i] > 0.0) {
      out[i] = scale / in[i];
      out_valid[i] = 1;
    } else {
      out[i] = 0.0;
      out_valid[i] = 0;
    }
  }
}

double min_masked_scalar(const double* v, const uint8_t* valid, size_t n) {
  double m = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    if (valid[i] && v[i] < m) m = v[i];
  }
  return m;
}

double max_masked_scalar(const double* v, const uint8_t* valid, size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    if (valid[i] && v[i] > m) m = v[i];
  }
  return m;
}

double sum_masked_scalar(const double* v, const uint8_t* valid, size_t n) {
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (valid[i]) s += v[i];
  }
  return s;
}

void quantize_scalar(double* v, size_t n) {
  for (size_t i = 0; i < n; ++i) v[i] = std::nearbyint(v[i]);
}

double sad_scalar(const double* a, const double* b, size_t n) {
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

void mask_greater_scalar(const double* v, const uint8_t* valid,
                         double threshold, bool invalid_is_true, size_t n,
                         uint8_t* out) {
  for (size_t i = 0; i < n; ++i) {
    out[i] = valid[i] ? (v[i] > threshold ? 1 : 0) : (invalid_is_true ? 1 : 0);
  }
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend backend{
      "scalar",           reciprocal_scaled_scalar, min_masked_scalar,
      max_masked_scalar,  sum_masked_scalar,        quantize_scalar,
      sad_scalar,         mask_greater_scalar,
  };
  return backend;
}

}  // namespace varibase::kernels
