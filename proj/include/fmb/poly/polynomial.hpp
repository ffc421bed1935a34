#pragma once

#include <map>
#include <vector>

#include "fmb/la/matrix.hpp"
#include "fmb/poly/basis.hpp"

namespace fmb::poly {

// Sparse real multivariate polynomial: coefficient map over MultiIndex.
// Exact-zero coefficients are never stored; the empty polynomial evaluates
// to 0 and has degree 0 by convention.
class Polynomial {
 public:
  struct Grlex {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
      return grlex_less(a, b);
    }
  };
  using TermMap = std::map<MultiIndex, double, Grlex>;

  explicit Polynomial(int n) : n_(n) {}

  static Polynomial constant(int n, double c);
  static Polynomial variable(int n, int var);  // x_{var}, 0-based

  int vars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(const MultiIndex& alpha, double coeff);
  double coeff(const MultiIndex& alpha) const;

  int degree() const;
  int half_degree() const;  // ceil(degree / 2)

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }

  Polynomial times(const Polynomial& other) const;
  Polynomial shifted(const MultiIndex& alpha) const;  // x^alpha * this

  double eval(const la::Vector& x) const;

 private:
  int n_;
  TermMap terms_;
};

double poly_eval(const Polynomial& p, const la::Vector& x);

}  // namespace fmb::poly
