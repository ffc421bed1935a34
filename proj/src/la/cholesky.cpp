#include <cassert>
#include <cmath>

#include "fmb/la/factor.hpp"
#include "fmb/simd/kernels.hpp"

namespace fmb::la {

namespace {

constexpr std::size_t kBlock = 64;

// Unblocked lower Cholesky of the square sub-block a[k0..k0+nb) x [k0..k0+nb),
// assuming columns left of k0 already hold final L entries for those rows.
bool factor_diag_block(Matrix& a, std::size_t k0, std::size_t nb) {
  for (std::size_t j = k0; j < k0 + nb; ++j) {
    double* rj = a.row(j);
    double d = a(j, j) - simd::dot(rj + k0, rj + k0, j - k0);
    if (!(d > 0.0)) return false;
    d = std::sqrt(d);
    a(j, j) = d;
    const double inv = 1.0 / d;
    for (std::size_t i = j + 1; i < k0 + nb; ++i) {
      double* ri = a.row(i);
      ri[j] = (ri[j] - simd::dot(ri + k0, rj + k0, j - k0)) * inv;
    }
  }
  return true;
}

}  // namespace

bool cholesky_in_place(Matrix& a) {
  assert(a.rows() == a.cols());
  const std::size_t n = a.rows();
  for (std::size_t k0 = 0; k0 < n; k0 += kBlock) {
    const std::size_t nb = std::min(kBlock, n - k0);
    if (!factor_diag_block(a, k0, nb)) return false;
    // Panel solve: rows below the diagonal block against L_D^T.
    for (std::size_t i = k0 + nb; i < n; ++i) {
      double* ri = a.row(i);
      for (std::size_t j = k0; j < k0 + nb; ++j) {
        const double* rj = a.row(j);
        ri[j] = (ri[j] - simd::dot(ri + k0, rj + k0, j - k0)) / rj[j];
      }
    }
    // Trailing update: A22 -= L21 L21^T (lower triangle only).
    const std::size_t t0 = k0 + nb;
    for (std::size_t i = t0; i < n; ++i) {
      const double* li = a.row(i) + k0;
      double* ri = a.row(i);
      std::size_t j = t0;
      for (; j + 4 <= i + 1; j += 4) {
        const double* ptrs[4] = {a.row(j) + k0, a.row(j + 1) + k0,
                                 a.row(j + 2) + k0, a.row(j + 3) + k0};
        double s[4];
        simd::dot4(li, ptrs, nb, s);
        ri[j] -= s[0];
        ri[j + 1] -= s[1];
        ri[j + 2] -= s[2];
        ri[j + 3] -= s[3];
      }
      for (; j <= i; ++j) {
        ri[j] -= simd::dot(li, a.row(j) + k0, nb);
      }
    }
  }
  // Zero the strict upper triangle so the result is a clean L.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = 0.0;
  return true;
}

double cholesky_regularized(Matrix& a, double shift0, int max_tries) {
  const std::size_t n = a.rows();
  Matrix saved = a;
  double shift = 0.0;
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    if (attempt > 0) {
      a = saved;
      shift = (attempt == 1) ? shift0 : shift * 10.0;
      for (std::size_t i = 0; i < n; ++i) a(i, i) += shift;
    }
    if (cholesky_in_place(a)) return shift;
  }
  return -1.0;
}

void solve_lower(const Matrix& l, Vector& x) {
  const std::size_t n = l.rows();
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = (x[i] - simd::dot(l.row(i), x.data(), i)) / l(i, i);
  }
}

void solve_lower_t(const Matrix& l, Vector& x) {
  const std::size_t n = l.rows();
  for (std::size_t ii = n; ii-- > 0;) {
    x[ii] /= l(ii, ii);
    if (ii > 0) simd::axpy(-x[ii], l.row(ii), x.data(), ii);
  }
}

void solve_cholesky(const Matrix& l, Vector& x) {
  solve_lower(l, x);
  solve_lower_t(l, x);
}

void solve_cholesky_multi(const Matrix& l, Matrix& b) {
  // Each row of b is an independent right-hand side.
  const std::size_t n = l.rows();
  for (std::size_t r = 0; r < b.rows(); ++r) {
    double* x = b.row(r);
    for (std::size_t i = 0; i < n; ++i)
      x[i] = (x[i] - simd::dot(l.row(i), x, i)) / l(i, i);
    for (std::size_t ii = n; ii-- > 0;) {
      x[ii] /= l(ii, ii);
      if (ii > 0) simd::axpy(-x[ii], l.row(ii), x, ii);
    }
  }
}

bool lu_solve(Matrix a, Vector& x) {
  assert(a.rows() == a.cols() && a.rows() == x.size());
  const std::size_t n = a.rows();
  std::vector<std::size_t> piv(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::fabs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::fabs(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0) return false;
    piv[k] = p;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(x[k], x[p]);
    }
    const double inv = 1.0 / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = a(i, k) * inv;
      a(i, k) = m;
      if (m != 0.0) simd::axpy(-m, a.row(k) + k + 1, a.row(i) + k + 1, n - k - 1);
      x[i] -= m * x[k];
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    x[ii] = (x[ii] - simd::dot(a.row(ii) + ii + 1, x.data() + ii + 1, n - ii - 1)) /
            a(ii, ii);
  }
  return true;
}

}  // namespace fmb::la
