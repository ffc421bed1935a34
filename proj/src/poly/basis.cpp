#include "fmb/poly/basis.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "fmb/error.hpp"

namespace fmb::poly {

int degree(const MultiIndex& a) {
  int d = 0;
  for (int e : a) d += e;
  return d;
}

bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
  const int da = degree(a);
  const int db = degree(b);
  if (da != db) return da < db;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

std::uint64_t basis_size(int n, int t) {
  // binomial(n + t, t) evaluated incrementally.
  std::uint64_t r = 1;
  for (int k = 1; k <= t; ++k) {
    r = r * static_cast<std::uint64_t>(n + k) / static_cast<std::uint64_t>(k);
  }
  return r;
}

namespace {

void compositions_desc(int remaining, int slots, MultiIndex& cur,
                       std::vector<MultiIndex>& out) {
  if (slots == 1) {
    cur.push_back(remaining);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = remaining; a >= 0; --a) {
    cur.push_back(a);
    compositions_desc(remaining - a, slots - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

MonomialBasis::MonomialBasis(int n, int t) : n_(n), t_(t) {
  if (n < 1 || t < 0) fail(ErrorCode::InvalidArgument, "basis needs n >= 1, t >= 0");
  list_.reserve(basis_size(n, t));
  MultiIndex cur;
  for (int d = 0; d <= t; ++d) {
    compositions_desc(d, n, cur, list_);
  }
}

std::size_t MonomialBasis::index_of(const MultiIndex& alpha) const {
  auto it = std::lower_bound(list_.begin(), list_.end(), alpha, grlex_less);
  if (it == list_.end() || *it != alpha) {
    fail(ErrorCode::DegreeOverflow, "monomial outside basis");
  }
  return static_cast<std::size_t>(it - list_.begin());
}

MonomialBasis enumerate_basis(int n, int t) { return MonomialBasis(n, t); }

const MonomialBasis& cached_basis(int n, int t) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, const MonomialBasis*> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, t);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, new MonomialBasis(n, t)).first;
  }
  return *it->second;
}

}  // namespace fmb::poly
