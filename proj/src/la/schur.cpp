// Real Schur decomposition: Householder Hessenberg reduction followed by
// Francis double-shift QR with deflation and ad-hoc exceptional shifts.
// Quasi-triangular 2x2 blocks with real eigenvalues are split afterwards so
// that every real eigenvalue ends up in a 1x1 block with a genuine Schur
// vector in z.

#include <cassert>
#include <cmath>

#include "fmb/la/factor.hpp"

namespace fmb::la {

namespace {

// Householder vector for a 3-vector (x,y,z); returns false when no reflection
// is needed. v is scaled so that applying P = I - beta v v^T zeroes y and z.
bool house3(double x, double y, double z, double v[3], double* beta) {
  const double nrm = std::sqrt(x * x + y * y + z * z);
  if (nrm == 0.0 || (y == 0.0 && z == 0.0)) return false;
  const double alpha = (x >= 0.0 ? -nrm : nrm);
  v[0] = x - alpha;
  v[1] = y;
  v[2] = z;
  const double vv = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  if (vv == 0.0) return false;
  *beta = 2.0 / vv;
  return true;
}

void apply_house3_rows(Matrix& h, std::size_t k, std::size_t nrows,
                       std::size_t c0, std::size_t c1, const double v[3],
                       double beta) {
  for (std::size_t j = c0; j < c1; ++j) {
    double s = v[0] * h(k, j) + v[1] * h(k + 1, j);
    if (nrows == 3) s += v[2] * h(k + 2, j);
    s *= beta;
    h(k, j) -= s * v[0];
    h(k + 1, j) -= s * v[1];
    if (nrows == 3) h(k + 2, j) -= s * v[2];
  }
}

void apply_house3_cols(Matrix& h, std::size_t k, std::size_t ncols,
                       std::size_t r0, std::size_t r1, const double v[3],
                       double beta) {
  for (std::size_t i = r0; i < r1; ++i) {
    double s = v[0] * h(i, k) + v[1] * h(i, k + 1);
    if (ncols == 3) s += v[2] * h(i, k + 2);
    s *= beta;
    h(i, k) -= s * v[0];
    h(i, k + 1) -= s * v[1];
    if (ncols == 3) h(i, k + 2) -= s * v[2];
  }
}

void hessenberg(Matrix& h, Matrix* q) {
  const std::size_t n = h.rows();
  if (n < 3) return;
  std::vector<double> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double nrm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) nrm += h(i, k) * h(i, k);
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) continue;
    const double x0 = h(k + 1, k);
    const double alpha = (x0 >= 0.0 ? -nrm : nrm);
    double vv = 0.0;
    v[k + 1] = x0 - alpha;
    vv += v[k + 1] * v[k + 1];
    for (std::size_t i = k + 2; i < n; ++i) {
      v[i] = h(i, k);
      vv += v[i] * v[i];
    }
    if (vv == 0.0) continue;
    const double beta = 2.0 / vv;
    // H <- P H
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += v[i] * h(i, j);
      s *= beta;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= s * v[i];
    }
    // H <- H P
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= beta;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * v[j];
    }
    if (q != nullptr) {
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = k + 1; j < n; ++j) s += (*q)(i, j) * v[j];
        s *= beta;
        for (std::size_t j = k + 1; j < n; ++j) (*q)(i, j) -= s * v[j];
      }
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    h(k + 1, k) = alpha;
  }
}

// Split a 2x2 diagonal block with real eigenvalues into two 1x1 blocks by an
// orthogonal similarity built from an eigenvector of the block.
void split_real_block(Matrix& t, Matrix* z, std::size_t i) {
  const std::size_t n = t.rows();
  const double a = t(i, i), b = t(i, i + 1);
  const double c = t(i + 1, i), d = t(i + 1, i + 1);
  const double mid = 0.5 * (a + d);
  const double disc = 0.25 * (a - d) * (a - d) + b * c;
  if (disc < 0.0) return;  // complex pair, keep the block
  const double sq = std::sqrt(disc);
  const double lam = (mid >= 0.0) ? mid + sq : mid - sq;  // larger magnitude
  double v0 = b, v1 = lam - a;
  if (std::fabs(v0) + std::fabs(v1) < std::fabs(lam - d) + std::fabs(c)) {
    v0 = lam - d;
    v1 = c;
  }
  const double nrm = std::sqrt(v0 * v0 + v1 * v1);
  if (nrm == 0.0) {
    t(i + 1, i) = 0.0;
    return;
  }
  const double cs = v0 / nrm, sn = v1 / nrm;
  // G = [[cs, -sn], [sn, cs]]; apply T <- G^T T G, Z <- Z G.
  for (std::size_t j = 0; j < n; ++j) {
    const double x = t(i, j), y = t(i + 1, j);
    t(i, j) = cs * x + sn * y;
    t(i + 1, j) = -sn * x + cs * y;
  }
  for (std::size_t r = 0; r < n; ++r) {
    const double x = t(r, i), y = t(r, i + 1);
    t(r, i) = cs * x + sn * y;
    t(r, i + 1) = -sn * x + cs * y;
  }
  if (z != nullptr) {
    for (std::size_t r = 0; r < n; ++r) {
      const double x = (*z)(r, i), y = (*z)(r, i + 1);
      (*z)(r, i) = cs * x + sn * y;
      (*z)(r, i + 1) = -sn * x + cs * y;
    }
  }
  t(i + 1, i) = 0.0;
}

}  // namespace

RealSchur real_schur(const Matrix& a, bool want_z) {
  assert(a.rows() == a.cols());
  const std::size_t n = a.rows();
  RealSchur out;
  out.t = a;
  out.z = Matrix::identity(n);
  if (n == 0) {
    out.converged = true;
    return out;
  }
  Matrix& h = out.t;
  Matrix* z = want_z ? &out.z : nullptr;
  hessenberg(h, z);

  const double eps = 1e-15;
  double scale = frobenius_norm(h);
  if (scale == 0.0) scale = 1.0;

  long m = static_cast<long>(n) - 1;
  int iter_this_block = 0;
  long total_iters = 0;
  const long max_total = 60 * static_cast<long>(n) + 100;

  while (m > 0) {
    if (++total_iters > max_total) {
      out.converged = false;
      return out;
    }
    // Deflate negligible subdiagonals.
    for (long i = 0; i < m; ++i) {
      const double bound =
          eps * (std::fabs(h(i, i)) + std::fabs(h(i + 1, i + 1)));
      if (std::fabs(h(i + 1, i)) <= std::max(bound, eps * scale * 1e-2)) {
        h(i + 1, i) = 0.0;
      }
    }
    if (h(m, m - 1) == 0.0) {
      --m;
      iter_this_block = 0;
      continue;
    }
    if (m >= 2 && h(m - 1, m - 2) == 0.0) {
      m -= 2;
      iter_this_block = 0;
      continue;
    }
    // Active window [l, m].
    long l = m - 1;
    while (l > 0 && h(l, l - 1) != 0.0) --l;
    if (l == m - 1) {
      // 2x2 window: converged as a quasi-triangular block (split below when
      // its eigenvalues are real).
      m -= 2;
      iter_this_block = 0;
      continue;
    }

    ++iter_this_block;
    double s, t;
    if (iter_this_block % 11 == 10) {
      // Ad-hoc exceptional shift.
      const double exc =
          std::fabs(h(m, m - 1)) + ((m >= 2) ? std::fabs(h(m - 1, m - 2)) : 0.0);
      s = 1.5 * exc;
      t = 0.4375 * exc * exc;
    } else {
      s = h(m - 1, m - 1) + h(m, m);
      t = h(m - 1, m - 1) * h(m, m) - h(m - 1, m) * h(m, m - 1);
    }

    double x = h(l, l) * h(l, l) + h(l, l + 1) * h(l + 1, l) - s * h(l, l) + t;
    double y = h(l + 1, l) * (h(l, l) + h(l + 1, l + 1) - s);
    double zz = (l + 2 <= m) ? h(l + 1, l) * h(l + 2, l + 1) : 0.0;

    for (long k = l; k <= m - 1; ++k) {
      const std::size_t nrows = (k + 2 <= m) ? 3 : 2;
      double v[3];
      double beta;
      if (house3(x, y, nrows == 3 ? zz : 0.0, v, &beta)) {
        if (nrows == 2) v[2] = 0.0;
        const std::size_t c0 = static_cast<std::size_t>(std::max(l, k - 1));
        apply_house3_rows(h, k, nrows, c0, n, v, beta);
        const std::size_t r1 =
            static_cast<std::size_t>(std::min<long>(k + 3, m) + 1);
        apply_house3_cols(h, k, nrows, 0, r1, v, beta);
        if (z != nullptr) apply_house3_cols(*z, k, nrows, 0, n, v, beta);
      }
      if (k + 1 <= m - 1) {
        x = h(k + 1, k);
        y = h(k + 2, k);
        zz = (k + 3 <= m) ? h(k + 3, k) : 0.0;
      }
    }
  }

  // Clean lower triangle artifacts below the first subdiagonal.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) h(i, j) = 0.0;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (h(i + 1, i) != 0.0) split_real_block(h, z, i);
  }

  out.converged = true;
  return out;
}

std::vector<std::complex<double>> schur_eigenvalues(const Matrix& t) {
  const std::size_t n = t.rows();
  std::vector<std::complex<double>> ev;
  ev.reserve(n);
  std::size_t i = 0;
  while (i < n) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      const double a = t(i, i), b = t(i, i + 1);
      const double c = t(i + 1, i), d = t(i + 1, i + 1);
      const double mid = 0.5 * (a + d);
      const double disc = 0.25 * (a - d) * (a - d) + b * c;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        ev.emplace_back(mid + sq, 0.0);
        ev.emplace_back(mid - sq, 0.0);
      } else {
        const double sq = std::sqrt(-disc);
        ev.emplace_back(mid, sq);
        ev.emplace_back(mid, -sq);
      }
      i += 2;
    } else {
      ev.emplace_back(t(i, i), 0.0);
      i += 1;
    }
  }
  return ev;
}

}  // namespace fmb::la
