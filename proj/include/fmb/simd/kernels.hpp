#pragma once

#include <cstddef>

namespace fmb::simd {

// Vectorizable inner-loop primitives used by the dense linear algebra layer.
// Each kernel has a scalar reference implementation and, on x86-64 with AVX2,
// a vectorized variant. The active set is chosen once at load time from CPU
// capabilities; FMB_SIMD=scalar (or =avx2) in the environment overrides it.
struct Kernels {
  // sum_k x[k] * y[k]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // out[r] = sum_k x[k] * y[r][k] for r = 0..3 (four dot products sharing x)
  void (*dot4)(const double* x, const double* const y[4], std::size_t n,
               double out[4]);
  // y[k] += a * x[k]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // y[k] += a0*x0[k] + a1*x1[k]  (fused two-vector update)
  void (*axpy2)(double a0, const double* x0, double a1, const double* x1,
                double* y, std::size_t n);
  // x[k] *= a
  void (*scale)(double a, double* x, std::size_t n);
  const char* name;
};

const Kernels& scalar_kernels();
// Null when AVX2 is not compiled in or not supported by this CPU.
const Kernels* avx2_kernels();
// The implementation selected at load time.
const Kernels& active();

inline double dot(const double* x, const double* y, std::size_t n) {
  return active().dot(x, y, n);
}
inline void dot4(const double* x, const double* const y[4], std::size_t n,
                 double out[4]) {
  active().dot4(x, y, n, out);
}
inline void axpy(double a, const double* x, double* y, std::size_t n) {
  active().axpy(a, x, y, n);
}
inline void axpy2(double a0, const double* x0, double a1, const double* x1,
                  double* y, std::size_t n) {
  active().axpy2(a0, x0, a1, x1, y, n);
}
inline void scale(double a, double* x, std::size_t n) {
  active().scale(a, x, n);
}

}  // namespace fmb::simd
