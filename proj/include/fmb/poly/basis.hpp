#pragma once

#include <cstdint>
#include <vector>

namespace fmb::poly {

// Exponent vector alpha of a monomial x^alpha; length = variable count.
using MultiIndex = std::vector<int>;

int degree(const MultiIndex& a);

// Graded lexicographic order with x1 > x2 > ... > xn: total degree first,
// then descending comparison of exponent vectors. This is the order the
// monomial family 1, x1, x2, ..., x1^2, x1 x2, ... is listed in.
bool grlex_less(const MultiIndex& a, const MultiIndex& b);

MultiIndex add(const MultiIndex& a, const MultiIndex& b);

// Number of monomials in n variables of degree <= t: binomial(n + t, t).
std::uint64_t basis_size(int n, int t);

// All monomials of degree <= t in graded-lex order, with the inverse map.
class MonomialBasis {
 public:
  MonomialBasis(int n, int t);

  int vars() const { return n_; }
  int max_degree() const { return t_; }
  std::size_t size() const { return list_.size(); }
  const MultiIndex& at(std::size_t i) const { return list_[i]; }

  // Flat index of a monomial; throws when alpha is out of range.
  std::size_t index_of(const MultiIndex& alpha) const;

 private:
  int n_;
  int t_;
  std::vector<MultiIndex> list_;
};

MonomialBasis enumerate_basis(int n, int t);

// Process-wide memoized basis lookup (bases are immutable once built).
const MonomialBasis& cached_basis(int n, int t);

}  // namespace fmb::poly
