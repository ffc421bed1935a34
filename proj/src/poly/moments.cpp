#include "fmb/poly/moments.hpp"

#include "fmb/error.hpp"

namespace fmb::poly {

double riesz(const MomentVector& y, const Polynomial& p) {
  if (p.vars() != y.n) fail(ErrorCode::DimensionMismatch, "riesz arity mismatch");
  if (p.degree() > y.order) {
    fail(ErrorCode::DegreeOverflow, "polynomial degree exceeds moment order");
  }
  const MonomialBasis& basis = cached_basis(y.n, y.order);
  double s = 0.0;
  for (const auto& [alpha, c] : p.terms()) {
    s += c * y.values[basis.index_of(alpha)];
  }
  return s;
}

la::Matrix moment_matrix(const MomentVector& y, int t) {
  if (y.order < 2 * t) fail(ErrorCode::OrderOverflow, "moment order < 2t");
  const MonomialBasis& rows = cached_basis(y.n, t);
  const MonomialBasis& full = cached_basis(y.n, y.order);
  const std::size_t s = rows.size();
  la::Matrix m(s, s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i; j < s; ++j) {
      const double v = y.values[full.index_of(add(rows.at(i), rows.at(j)))];
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

la::Matrix localizing_matrix(const MomentVector& y, const Polynomial& q, int t) {
  if (q.vars() != y.n) fail(ErrorCode::DimensionMismatch, "localizing arity mismatch");
  if (y.order < 2 * t + q.degree()) {
    fail(ErrorCode::OrderOverflow, "moment order < 2t + deg q");
  }
  const MonomialBasis& rows = cached_basis(y.n, t);
  const MonomialBasis& full = cached_basis(y.n, y.order);
  const std::size_t s = rows.size();
  la::Matrix m(s, s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i; j < s; ++j) {
      const MultiIndex ab = add(rows.at(i), rows.at(j));
      double v = 0.0;
      for (const auto& [gamma, c] : q.terms()) {
        v += c * y.values[full.index_of(add(ab, gamma))];
      }
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

MomentVector dirac_moments(const la::Vector& x, int order) {
  if (order < 0) fail(ErrorCode::InvalidArgument, "negative moment order");
  const int n = static_cast<int>(x.size());
  const MonomialBasis& basis = cached_basis(n, order);
  MomentVector y;
  y.n = n;
  y.order = order;
  y.values.resize(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const MultiIndex& alpha = basis.at(i);
    double m = 1.0;
    for (int v = 0; v < n; ++v) {
      for (int e = 0; e < alpha[v]; ++e) m *= x[v];
    }
    y.values[i] = m;
  }
  return y;
}

}  // namespace fmb::poly
