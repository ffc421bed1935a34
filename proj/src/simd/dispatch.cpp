#include <cstdlib>
#include <cstring>

#include "fmb/simd/kernels.hpp"

namespace fmb::simd {

namespace {

const Kernels& pick() {
  const char* force = std::getenv("FMB_SIMD");
  if (force != nullptr) {
    if (std::strcmp(force, "scalar") == 0) return scalar_kernels();
    if (std::strcmp(force, "avx2") == 0) {
      const Kernels* k = avx2_kernels();
      if (k != nullptr) return *k;
      return scalar_kernels();
    }
  }
  const Kernels* k = avx2_kernels();
  return k != nullptr ? *k : scalar_kernels();
}

}  // namespace

const Kernels& active() {
  static const Kernels& chosen = pick();
  return chosen;
}

}  // namespace fmb::simd
