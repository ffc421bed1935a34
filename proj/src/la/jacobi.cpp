// Cyclic Jacobi eigendecomposition and one-sided Jacobi SVD. Both are
// O(n^3)-per-sweep methods; at the matrix sizes in this project (<= ~60 for
// repeated use, ~715 never hits these paths) they are accurate to a few ulps
// and unconditionally stable.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "fmb/la/factor.hpp"
#include "fmb/simd/kernels.hpp"

namespace fmb::la {

namespace {

constexpr int kMaxSweeps = 60;

void fix_sign_column(Matrix& m, std::size_t col, Matrix* coupled,
                     std::size_t coupled_col) {
  std::size_t arg = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double v = std::fabs(m(i, col));
    if (v > best) {
      best = v;
      arg = i;
    }
  }
  if (m(arg, col) < 0.0) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, col) = -m(i, col);
    if (coupled != nullptr) {
      for (std::size_t i = 0; i < coupled->rows(); ++i)
        (*coupled)(i, coupled_col) = -(*coupled)(i, coupled_col);
    }
  }
}

}  // namespace

SymEig sym_eig(const Matrix& a_in) {
  assert(a_in.rows() == a_in.cols());
  const std::size_t n = a_in.rows();
  Matrix a = a_in;
  symmetrize(a);
  Matrix v = Matrix::identity(n);

  const double fro = std::max(frobenius_norm(a), 1e-300);
  const double tol = 1e-15 * fro;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(2.0 * off) <= tol) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= 1e-18 * fro) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) /
            (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymEig out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    fix_sign_column(out.vectors, j, nullptr, 0);
  }
  return out;
}

Vector singular_values_sym(const Matrix& a) {
  SymEig e = sym_eig(a);
  Vector s(e.values.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::fabs(e.values[i]);
  std::sort(s.begin(), s.end(), std::greater<double>());
  return s;
}

Svd svd(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  // Work on W = A^T so that each original column is a contiguous row.
  Matrix w = transpose(a);
  Matrix vt = Matrix::identity(n);  // rows are right singular vectors

  const double fro = std::max(frobenius_norm(a), 1e-300);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double* wp = w.row(p);
        double* wq = w.row(q);
        const double app = simd::dot(wp, wp, m);
        const double aqq = simd::dot(wq, wq, m);
        const double apq = simd::dot(wp, wq, m);
        if (std::fabs(apq) <= 1e-16 * std::sqrt(app * aqq) + 1e-300) continue;
        rotated = true;
        const double zeta = (aqq - app) / (2.0 * apq);
        const double t =
            (zeta >= 0.0 ? 1.0 : -1.0) /
            (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < m; ++k) {
          const double xp = wp[k], xq = wq[k];
          wp[k] = c * xp - s * xq;
          wq[k] = s * xp + c * xq;
        }
        double* vp = vt.row(p);
        double* vq = vt.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          const double xp = vp[k], xq = vq[k];
          vp[k] = c * xp - s * xq;
          vq[k] = s * xp + c * xq;
        }
      }
    }
    if (!rotated) break;
  }

  Vector sig(n);
  for (std::size_t j = 0; j < n; ++j)
    sig[j] = std::sqrt(simd::dot(w.row(j), w.row(j), m));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sig[i] > sig[j]; });

  Svd out;
  out.sigma.resize(n);
  out.u = Matrix(m, n);
  out.v = Matrix(n, n);
  const double sig_tol = 1e-14 * std::max(fro, 1.0);
  std::size_t filled = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.sigma[j] = sig[src];
    for (std::size_t i = 0; i < n; ++i) out.v(i, j) = vt(src, i);
    if (sig[src] > sig_tol) {
      const double inv = 1.0 / sig[src];
      for (std::size_t i = 0; i < m; ++i) out.u(i, j) = w(src, i) * inv;
      filled = j + 1;
    }
  }
  // Deterministic completion of u columns for (near-)zero singular values,
  // possible only while there are spare dimensions (j < m).
  for (std::size_t j = filled; j < n && j < m; ++j) {
    Vector cand(m, 0.0);
    for (std::size_t pick = 0; pick < m; ++pick) {
      for (std::size_t i = 0; i < m; ++i) cand[i] = (i == pick) ? 1.0 : 0.0;
      for (std::size_t c = 0; c < j; ++c) {
        double proj = 0.0;
        for (std::size_t i = 0; i < m; ++i) proj += cand[i] * out.u(i, c);
        for (std::size_t i = 0; i < m; ++i) cand[i] -= proj * out.u(i, c);
      }
      const double nrm = std::sqrt(std::inner_product(
          cand.begin(), cand.end(), cand.begin(), 0.0));
      if (nrm > 0.5) {
        for (std::size_t i = 0; i < m; ++i) out.u(i, j) = cand[i] / nrm;
        break;
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) fix_sign_column(out.v, j, &out.u, j);
  return out;
}

}  // namespace fmb::la
