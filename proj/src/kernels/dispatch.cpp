#include <cstdlib>
#include <cstring>

#include "varibase/kernels/kernels.hpp"

namespace varibase::kernels {

#if defined(VARIBASE_HAVE_AVX2)
const Backend& avx2_backend();  // kernels_avx2.cpp
#endif

namespace {

bool cpu_has_avx2() {
#if defined(VARIBASE_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Backend* find_backend(const char* name) {
  if (std::strcmp(name, "scalar") == 0) return &scalar_backend();
#if defined(VARIBASE_HAVE_AVX2)
  if (std::strcmp(name, "avx2") == 0 && cpu_has_avx2()) return &avx2_backend();
#endif
  return nullptr;
}

const Backend* select_default() {
  if (const char* env = std::getenv("VARIBASE_KERNELS")) {
    if (const Backend* b = find_backend(env)) return b;
    // Unknown or unsupported request falls through to auto-detection.
  }
#if defined(VARIBASE_HAVE_AVX2)
  if (cpu_has_avx2()) return &avx2_backend();
#endif
  return &scalar_backend();
}

const Backend*& active_slot() {
  static const Backend* slot = select_default();
  return slot;
}

}  // namespace

const Backend& active() { return *active_slot(); }

const char* active_backend_name() { return active().name; }

bool set_backend(const char* name) {
  if (const Backend* b = find_backend(name)) {
    active_slot() = b;
    return true;
  }
  return false;
}

size_t available_backends(const char** names, size_t cap) {
  size_t n = 0;
  if (n < cap) names[n] = "scalar";
  ++n;
  if (cpu_has_avx2()) {
    if (n < cap) names[n] = "avx2";
    ++n;
  }
  return n;
}

}  // namespace varibase::kernels
