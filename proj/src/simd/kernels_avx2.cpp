// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma; callers reach it only through the dispatch table after a
// runtime CPU check, so the rest of the build stays generic x86-64.

#include "fmb/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define FMB_HAVE_AVX2_TU 1
#include <immintrin.h>
#else
#define FMB_HAVE_AVX2_TU 0
#endif

namespace fmb::simd {

#if FMB_HAVE_AVX2_TU

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 16 <= n; k += 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k + 4), _mm256_loadu_pd(y + k + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k + 8), _mm256_loadu_pd(y + k + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k + 12), _mm256_loadu_pd(y + k + 12), acc3);
  }
  for (; k + 4 <= n; k += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k), acc0);
  }
  double s = hsum(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
  for (; k < n; ++k) s += x[k] * y[k];
  return s;
}

void dot4_avx2(const double* x, const double* const y[4], std::size_t n,
               double out[4]) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  __m256d a2 = _mm256_setzero_pd();
  __m256d a3 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d xv = _mm256_loadu_pd(x + k);
    a0 = _mm256_fmadd_pd(xv, _mm256_loadu_pd(y[0] + k), a0);
    a1 = _mm256_fmadd_pd(xv, _mm256_loadu_pd(y[1] + k), a1);
    a2 = _mm256_fmadd_pd(xv, _mm256_loadu_pd(y[2] + k), a2);
    a3 = _mm256_fmadd_pd(xv, _mm256_loadu_pd(y[3] + k), a3);
  }
  double s0 = hsum(a0), s1 = hsum(a1), s2 = hsum(a2), s3 = hsum(a3);
  for (; k < n; ++k) {
    const double xk = x[k];
    s0 += xk * y[0][k];
    s1 += xk * y[1][k];
    s2 += xk * y[2][k];
    s3 += xk * y[3][k];
  }
  out[0] = s0;
  out[1] = s1;
  out[2] = s2;
  out[3] = s3;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    _mm256_storeu_pd(y + k, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + k),
                                            _mm256_loadu_pd(y + k)));
    _mm256_storeu_pd(y + k + 4, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + k + 4),
                                                _mm256_loadu_pd(y + k + 4)));
  }
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(y + k, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + k),
                                            _mm256_loadu_pd(y + k)));
  }
  for (; k < n; ++k) y[k] += a * x[k];
}

void axpy2_avx2(double a0, const double* x0, double a1, const double* x1,
                double* y, std::size_t n) {
  const __m256d a0v = _mm256_set1_pd(a0);
  const __m256d a1v = _mm256_set1_pd(a1);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d acc = _mm256_loadu_pd(y + k);
    acc = _mm256_fmadd_pd(a0v, _mm256_loadu_pd(x0 + k), acc);
    acc = _mm256_fmadd_pd(a1v, _mm256_loadu_pd(x1 + k), acc);
    _mm256_storeu_pd(y + k, acc);
  }
  for (; k < n; ++k) y[k] += a0 * x0[k] + a1 * x1[k];
}

void scale_avx2(double a, double* x, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(x + k, _mm256_mul_pd(av, _mm256_loadu_pd(x + k)));
  }
  for (; k < n; ++k) x[k] *= a;
}

const Kernels kAvx2 = {dot_avx2, dot4_avx2, axpy_avx2, axpy2_avx2, scale_avx2,
                       "avx2"};

}  // namespace

const Kernels* avx2_kernels() {
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return &kAvx2;
  }
  return nullptr;
}

#else

const Kernels* avx2_kernels() { return nullptr; }

#endif  // FMB_HAVE_AVX2_TU

}  // namespace fmb::simd
