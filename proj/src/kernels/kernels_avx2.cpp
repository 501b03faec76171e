// AVX2 variants of the grid kernels. Compiled with -mavx2 only; callers must
// gate on runtime CPU support (see dispatch.cpp). 4 doubles per vector,
// scalar tail. Division/min/max/round match the scalar reference bit-exactly
// (IEEE correctly-rounded ops, nearbyint == _mm256_round_pd ties-to-even);
// sums reassociate lanes.

#if defined(__AVX2__)

#include <immintrin.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "varibase/kernels/kernels.hpp"

namespace varibase::kernels {
namespace {

// Expand 4 validity bytes into a 4-lane double mask (all-ones where valid).
inline __m256d load_mask4(const uint8_t* valid) {
  uint32_t packed;
  std::memcpy(&packed, valid, 4);
  __m128i bytes = _mm_cvtsi32_si128(static_cast<int>(packed));
  __m256i lanes = _mm256_cvtepu8_epi64(bytes);
  return _mm256_castsi256_pd(
      _mm256_cmpgt_epi64(lanes, _mm256_setzero_si256()));
}

inline void store_mask4(__m256d m, uint8_t* out) {
  const int bits = _mm256_movemask_pd(m);
  out[0] = bits & 1 ? 1 : 0;
  out[1] = bits & 2 ? 1 : 0;
  out[2] = bits & 4 ? 1 : 0;
  out[3] = bits & 8 ? 1 : 0;
}

void reciprocal_scaled_avx2(const double* in, const uint8_t* in_valid,
                            double scale, size_t n, double* out,
                            uint8_t* out_valid) {
  const __m256d vscale = _mm256_set1_pd(scale);
  const __m256d zero = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(in + i);
    const __m256d ok =
        _mm256_and_pd(load_mask4(in_valid + i), _mm256_cmp_pd(v, zero, _CMP_GT_OQ));
    const __m256d q = _mm256_div_pd(vscale, v);
    _mm256_storeu_pd(out + i, _mm256_and_pd(q, ok));
    store_mask4(ok, out_valid + i);
  }
  for (; i < n; ++i) {
    if (in_valid[i] && in[i] > 0.0) {
      out[i] = scale / in[i];
      out_valid[i] = 1;
    } else {
      out[i] = 0.0;
      out_valid[i] = 0;
    }
  }
}

double min_masked_avx2(const double* v, const uint8_t* valid, size_t n) {
  const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d acc = inf;
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d m = load_mask4(valid + i);
    const __m256d x = _mm256_blendv_pd(inf, _mm256_loadu_pd(v + i), m);
    acc = _mm256_min_pd(acc, x);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double best = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
  for (; i < n; ++i) {
    if (valid[i] && v[i] < best) best = v[i];
  }
  return best;
}

double max_masked_avx2(const double* v, const uint8_t* valid, size_t n) {
  const __m256d ninf = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  __m256d acc = ninf;
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d m = load_mask4(valid + i);
    const __m256d x = _mm256_blendv_pd(ninf, _mm256_loadu_pd(v + i), m);
    acc = _mm256_max_pd(acc, x);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double best = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) {
    if (valid[i] && v[i] > best) best = v[i];
  }
  return best;
}

double sum_masked_avx2(const double* v, const uint8_t* valid, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d m = load_mask4(valid + i);
    acc = _mm256_add_pd(acc, _mm256_and_pd(_mm256_loadu_pd(v + i), m));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    if (valid[i]) s += v[i];
  }
  return s;
}

void quantize_avx2(double* v, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(v + i);
    _mm256_storeu_pd(
        v + i, _mm256_round_pd(x, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC));
  }
  for (; i < n; ++i) v[i] = std::nearbyint(v[i]);
}

double sad_avx2(const double* a, const double* b, size_t n) {
  const __m256d absmask =
      _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_and_pd(d, absmask));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

void mask_greater_avx2(const double* v, const uint8_t* valid, double threshold,
                       bool invalid_is_true, size_t n, uint8_t* out) {
  const __m256d thr = _mm256_set1_pd(threshold);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d m = load_mask4(valid + i);
    const __m256d gt = _mm256_cmp_pd(_mm256_loadu_pd(v + i), thr, _CMP_GT_OQ);
    __m256d r = _mm256_and_pd(m, gt);
    if (invalid_is_true) {
      r = _mm256_or_pd(r, _mm256_andnot_pd(m, _mm256_castsi256_pd(
                                                  _mm256_set1_epi64x(-1))));
    }
    store_mask4(r, out + i);
  }
  for (; i < n; ++i) {
    out[i] = valid[i] ? (v[i] > threshold ? 1 : 0) : (invalid_is_true ? 1 : 0);
  }
}

}  // namespace

const Backend& avx2_backend() {
  static const Backend backend{
      "avx2",           reciprocal_scaled_avx2, min_masked_avx2,
      max_masked_avx2,  sum_masked_avx2,        quantize_avx2,
      sad_avx2,         mask_greater_avx2,
  };
  return backend;
}

}  // namespace varibase::kernels

#endif  // __AVX2__
