#pragma once

#include <cstddef>
#include <cstdint>

namespace varibase::kernels {

/// Grid kernels behind the per-pixel hot loops (depth<->disparity
/// conversion, quantization, masked reductions, SAD block-matching cost).
///
/// Every kernel has a scalar reference implementation and may have SIMD
/// variants; the active backend is picked once at startup from CPU features
/// and can be overridden with the environment variable
/// VARIBASE_KERNELS=scalar|avx2 (or set_backend() in tests).
///
/// Contract: division/min/max/quantize/mask kernels match the scalar
/// reference bit-exactly; sum-style reductions (sad, sum_masked) may
/// reassociate and are equivalent to 1e-12 relative. Quantization is
/// nearbyint (ties to even). Invalid slots always hold value 0.
struct Backend {
  const char* name;

  // out[i] = scale / in[i] where in_valid[i] && in[i] > 0, else (0, invalid).
  void (*reciprocal_scaled)(const double* in, const uint8_t* in_valid,
                            double scale, size_t n, double* out,
                            uint8_t* out_valid);

  // Min over valid entries; +infinity when none.
  double (*min_masked)(const double* v, const uint8_t* valid, size_t n);

  // Max over valid entries; -infinity when none.
  double (*max_masked)(const double* v, const uint8_t* valid, size_t n);

  // Sum over valid entries.
  double (*sum_masked)(const double* v, const uint8_t* valid, size_t n);

  // In-place nearbyint over all slots (invalid slots are 0 and stay 0).
  void (*quantize)(double* v, size_t n);

  // Sum of |a[i] - b[i]|.
  double (*sad)(const double* a, const double* b, size_t n);

  // out[i] = 1 if (valid && v > threshold) || (!valid && invalid_is_true).
  void (*mask_greater)(const double* v, const uint8_t* valid, double threshold,
                       bool invalid_is_true, size_t n, uint8_t* out);
};

const Backend& scalar_backend();

/// Active backend (auto-selected on first use).
const Backend& active();
const char* active_backend_name();

/// Force a backend by name; returns false if unavailable on this machine.
bool set_backend(const char* name);

/// Names of all backends compiled in and supported by this CPU.
size_t available_backends(const char** names, size_t cap);

// Convenience forwarders through the active backend.
inline void reciprocal_scaled(const double* in, const uint8_t* in_valid,
                              double scale, size_t n, double* out,
                              uint8_t* out_valid) {
  active().reciprocal_scaled(in, in_valid, scale, n, out, out_valid);
}
inline double min_masked(const double* v, const uint8_t* valid, size_t n) {
  return active().min_masked(v, valid, n);
}
inline double max_masked(const double* v, const uint8_t* valid, size_t n) {
  return active().max_masked(v, valid, n);
}
inline double sum_masked(const double* v, const uint8_t* valid, size_t n) {
  return active().sum_masked(v, valid, n);
}
inline void quantize(double* v, size_t n) { active().quantize(v, n); }
inline double sad(const double* a, const double* b, size_t n) {
  return active().sad(a, b, n);
}
inline void mask_greater(const double* v, const uint8_t* valid,
                         double threshold, bool invalid_is_true, size_t n,
                         uint8_t* out) {
  active().mask_greater(v, valid, threshold, invalid_is_true, n, out);
}

}  // namespace varibase::kernels
