#include "fmb/simd/kernels.hpp"

namespace fmb::simd {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  // Four partial sums: keeps the result identical to the unrolled AVX2
  // variant reduction pattern only by accident, not by contract; the two
  // implementations are compared with a tolerance, never bitwise.
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    s0 += x[k] * y[k];
    s1 += x[k + 1] * y[k + 1];
    s2 += x[k + 2] * y[k + 2];
    s3 += x[k + 3] * y[k + 3];
  }
  double s = (s0 + s1) + (s2 + s3);
  for (; k < n; ++k) s += x[k] * y[k];
  return s;
}

void dot4_scalar(const double* x, const double* const y[4], std::size_t n,
                 double out[4]) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
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

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += a * x[k];
}

void axpy2_scalar(double a0, const double* x0, double a1, const double* x1,
                  double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += a0 * x0[k] + a1 * x1[k];
}

void scale_scalar(double a, double* x, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) x[k] *= a;
}

const Kernels kScalar = {dot_scalar, dot4_scalar, axpy_scalar, axpy2_scalar,
                         scale_scalar, "scalar"};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

}  // namespace fmb::simd
