#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "varibase/core/random.hpp"
#include "varibase/kernels/kernels.hpp"

using namespace varibase;

namespace {

struct MaskedData {
  std::vector<double> values;
  std::vector<uint8_t> mask;
};

// Invalid slots hold 0, matching the Image invariant.
MaskedData random_masked(size_t n, uint64_t seed, double lo = 0.01,
                         double hi = 50.0) {
  Rng rng(seed);
  MaskedData d;
  d.values.resize(n);
  d.mask.resize(n);
  for (size_t i = 0; i < n; ++i) {
    d.mask[i] = rng.uniform() < 0.8 ? 1 : 0;
    d.values[i] = d.mask[i] ? rng.uniform(lo, hi) : 0.0;
  }
  return d;
}

const size_t kSizes[] = {0, 1, 3, 4, 5, 17, 64, 1000, 1003};

}  // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(std::string(kernels::scalar_backend().name) == "scalar");
  const char* names[4];
  const size_t n = kernels::available_backends(names, 4);
  CHECK(n >= 1);
}

TEST_CASE("backend equivalence: every compiled backend matches scalar") {
  const kernels::Backend& ref = kernels::scalar_backend();
  const char* names[4];
  const size_t n_backends = kernels::available_backends(names, 4);

  for (size_t bi = 0; bi < n_backends; ++bi) {
    REQUIRE(kernels::set_backend(names[bi]));
    const kernels::Backend& b = kernels::active();
    INFO("backend ", b.name);

    for (size_t n : kSizes) {
      MaskedData in = random_masked(n, 42 + n);

      SUBCASE("") {}  // keep sizes in one pass; doctest needs no split here

      // reciprocal_scaled: bit-exact (IEEE division).
      {
        std::vector<double> out_ref(n), out_b(n);
        std::vector<uint8_t> m_ref(n), m_b(n);
        ref.reciprocal_scaled(in.values.data(), in.mask.data(), 3.7, n,
                              out_ref.data(), m_ref.data());
        b.reciprocal_scaled(in.values.data(), in.mask.data(), 3.7, n,
                            out_b.data(), m_b.data());
        CHECK(out_ref == out_b);
        CHECK(m_ref == m_b);
      }

      // min/max: bit-exact.
      CHECK(ref.min_masked(in.values.data(), in.mask.data(), n) ==
            b.min_masked(in.values.data(), in.mask.data(), n));
      CHECK(ref.max_masked(in.values.data(), in.mask.data(), n) ==
            b.max_masked(in.values.data(), in.mask.data(), n));

      // sum: reassociation tolerance.
      {
        const double s_ref = ref.sum_masked(in.values.data(), in.mask.data(), n);
        const double s_b = b.sum_masked(in.values.data(), in.mask.data(), n);
        CHECK(std::abs(s_ref - s_b) <=
              1e-12 * std::max(1.0, std::abs(s_ref)));
      }

      // quantize: bit-exact (ties to even both paths).
      {
        std::vector<double> q_ref = in.values;
        std::vector<double> q_b = in.values;
        ref.quantize(q_ref.data(), n);
        b.quantize(q_b.data(), n);
        CHECK(q_ref == q_b);
      }

      // sad: reassociation tolerance.
      {
        MaskedData other = random_masked(n, 137 + n);
        const double s_ref = ref.sad(in.values.data(), other.values.data(), n);
        const double s_b = b.sad(in.values.data(), other.values.data(), n);
        CHECK(std::abs(s_ref - s_b) <=
              1e-12 * std::max(1.0, std::abs(s_ref)));
      }

      // mask_greater: bit-exact, both invalid policies.
      for (bool invalid_is_true : {false, true}) {
        std::vector<uint8_t> m_ref(n), m_b(n);
        ref.mask_greater(in.values.data(), in.mask.data(), 25.0,
                         invalid_is_true, n, m_ref.data());
        b.mask_greater(in.values.data(), in.mask.data(), 25.0, invalid_is_true,
                       n, m_b.data());
        CHECK(m_ref == m_b);
      }
    }
  }
  kernels::set_backend(kernels::scalar_backend().name);
}

TEST_CASE("quantize rounds ties to even") {
  std::vector<double> v{0.5, 1.5, 2.5, -0.5, -1.5, 3.49999};
  kernels::quantize(v.data(), v.size());
  CHECK(v == std::vector<double>{0.0, 2.0, 2.0, -0.0, -2.0, 3.0});
}

TEST_CASE("reciprocal_scaled maps nonpositive and invalid inputs to invalid") {
  std::vector<double> in{2.0, 0.0, -1.0, 4.0};
  std::vector<uint8_t> mask{1, 1, 1, 0};
  std::vector<double> out(4);
  std::vector<uint8_t> out_mask(4);
  kernels::scalar_backend().reciprocal_scaled(in.data(), mask.data(), 8.0, 4,
                                              out.data(), out_mask.data());
  CHECK(out[0] == 4.0);
  CHECK(out_mask[0] == 1);
  CHECK(out_mask[1] == 0);
  CHECK(out_mask[2] == 0);
  CHECK(out_mask[3] == 0);
  CHECK(out[1] == 0.0);
  CHECK(out[2] == 0.0);
}

TEST_CASE("min over empty mask is +infinity, max is -infinity") {
  std::vector<double> v{1.0, 2.0};
  std::vector<uint8_t> mask{0, 0};
  CHECK(std::isinf(kernels::min_masked(v.data(), mask.data(), 2)));
  CHECK(kernels::min_masked(v.data(), mask.data(), 2) > 0);
  CHECK(std::isinf(kernels::max_masked(v.data(), mask.data(), 2)));
  CHECK(kernels::max_masked(v.data(), mask.data(), 2) < 0);
}
