#include "fmb/poly/polynomial.hpp"

#include <cmath>

#include "fmb/error.hpp"

namespace fmb::poly {

Polynomial Polynomial::constant(int n, double c) {
  Polynomial p(n);
  p.add_term(MultiIndex(n, 0), c);
  return p;
}

Polynomial Polynomial::variable(int n, int var) {
  Polynomial p(n);
  MultiIndex a(n, 0);
  a[var] = 1;
  p.add_term(a, 1.0);
  return p;
}

void Polynomial::add_term(const MultiIndex& alpha, double coeff) {
  if (static_cast<int>(alpha.size()) != n_) {
    fail(ErrorCode::DimensionMismatch, "term arity != polynomial arity");
  }
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.emplace(alpha, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? 0.0 : it->second;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, poly::degree(alpha));
  return d;
}

int Polynomial::half_degree() const { return (degree() + 1) / 2; }

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, c] : terms_) c *= s;
  return *this;
}

Polynomial Polynomial::times(const Polynomial& other) const {
  Polynomial r(n_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : other.terms_) {
      r.add_term(add(a, b), ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::shifted(const MultiIndex& alpha) const {
  Polynomial r(n_);
  for (const auto& [a, c] : terms_) r.add_term(add(a, alpha), c);
  return r;
}

double Polynomial::eval(const la::Vector& x) const {
  if (static_cast<int>(x.size()) != n_) {
    fail(ErrorCode::DimensionMismatch, "point arity != polynomial arity");
  }
  double s = 0.0;
  for (const auto& [alpha, c] : terms_) {
    double m = c;
    for (int i = 0; i < n_; ++i) {
      for (int e = 0; e < alpha[i]; ++e) m *= x[i];
    }
    s += m;
  }
  return s;
}

double poly_eval(const Polynomial& p, const la::Vector& x) { return p.eval(x); }

}  // namespace fmb::poly
