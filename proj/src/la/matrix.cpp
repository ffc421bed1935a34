#include "fmb/la/matrix.hpp"

#include <cassert>
#include <cmath>

#include "fmb/simd/kernels.hpp"

namespace fmb::la {

Matrix multiply(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (ai[k] != 0.0) simd::axpy(ai[k], b.row(k), ci, b.cols());
    }
  }
  return c;
}

Matrix multiply_nt(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.cols());
  Matrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) {
      c(i, j) = simd::dot(a.row(i), b.row(j), a.cols());
    }
  }
  return c;
}

Matrix multiply_tn(const Matrix& a, const Matrix& b) {
  assert(a.rows() == b.rows());
  Matrix c(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const double* ak = a.row(k);
    const double* bk = b.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      if (ak[i] != 0.0) simd::axpy(ak[i], bk, c.row(i), b.cols());
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Vector multiply(const Matrix& a, const Vector& x) {
  assert(a.cols() == x.size());
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    y[i] = simd::dot(a.row(i), x.data(), a.cols());
  return y;
}

Vector multiply_t(const Matrix& a, const Vector& x) {
  assert(a.rows() == x.size());
  Vector y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (x[i] != 0.0) simd::axpy(x[i], a.row(i), y.data(), a.cols());
  return y;
}

void add_scaled(Matrix& a, double s, const Matrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  simd::axpy(s, b.data(), a.data(), a.rows() * a.cols());
}

void symmetrize(Matrix& a) {
  assert(a.rows() == a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = v;
      a(j, i) = v;
    }
  }
}

double frobenius_norm(const Matrix& a) {
  return std::sqrt(simd::dot(a.data(), a.data(), a.rows() * a.cols()));
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  const double* p = a.data();
  for (std::size_t k = 0; k < a.rows() * a.cols(); ++k)
    m = std::max(m, std::fabs(p[k]));
  return m;
}

double max_abs(const Vector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double dot(const Vector& a, const Vector& b) {
  assert(a.size() == b.size());
  return simd::dot(a.data(), b.data(), a.size());
}

double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

}  // namespace fmb::la
