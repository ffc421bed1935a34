#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fmb/error.hpp"
#include "fmb/la/factor.hpp"
#include "fmb/poly/moments.hpp"
#include "fmb/sim/rng.hpp"

using namespace fmb;
using poly::MultiIndex;

namespace {

poly::Polynomial example_poly() {
  // 1 + 2 x2 + 3 x1^2 + 4 x1 x2
  poly::Polynomial p(2);
  p.add_term({0, 0}, 1.0);
  p.add_term({0, 1}, 2.0);
  p.add_term({2, 0}, 3.0);
  p.add_term({1, 1}, 4.0);
  return p;
}

poly::MomentVector random_moments(sim::SplitMix64& rng, int n, int order) {
  poly::MomentVector y;
  y.n = n;
  y.order = order;
  y.values.resize(poly::cached_basis(n, order).size());
  for (double& v : y.values) v = rng.next_uniform(-1.0, 1.0);
  return y;
}

}  // namespace

TEST_CASE("graded-lex basis enumeration") {
  poly::MonomialBasis b21 = poly::enumerate_basis(2, 1);
  REQUIRE(b21.size() == 3);
  CHECK(b21.at(0) == MultiIndex{0, 0});
  CHECK(b21.at(1) == MultiIndex{1, 0});
  CHECK(b21.at(2) == MultiIndex{0, 1});

  CHECK(poly::enumerate_basis(2, 2).size() == 6);
  CHECK(poly::enumerate_basis(9, 2).size() == 55);
  CHECK(poly::basis_size(9, 2) == 55);  // (9+2)! / (2! 9!)

  // Degree-2 tail of the n=2 basis follows 20, 11, 02.
  poly::MonomialBasis b22 = poly::enumerate_basis(2, 2);
  CHECK(b22.at(3) == MultiIndex{2, 0});
  CHECK(b22.at(4) == MultiIndex{1, 1});
  CHECK(b22.at(5) == MultiIndex{0, 2});
}

TEST_CASE("basis bijectivity for n <= 9, t <= 4") {
  for (int n = 1; n <= 9; ++n) {
    for (int t = 0; t <= 4; ++t) {
      poly::MonomialBasis b = poly::enumerate_basis(n, t);
      REQUIRE(b.size() == poly::basis_size(n, t));
      for (std::size_t i = 0; i < b.size(); ++i) {
        CHECK(b.index_of(b.at(i)) == i);
      }
    }
  }
}

TEST_CASE("grlex is a strict total order") {
  poly::MonomialBasis b = poly::enumerate_basis(3, 3);
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK_FALSE(poly::grlex_less(b.at(i), b.at(i)));
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      CHECK(poly::grlex_less(b.at(i), b.at(j)));
      CHECK_FALSE(poly::grlex_less(b.at(j), b.at(i)));
    }
  }
}

TEST_CASE("polynomial evaluation") {
  poly::Polynomial p = example_poly();
  CHECK(poly::poly_eval(p, {0.0, 0.0}) == 1.0);
  CHECK(poly::poly_eval(p, {1.0, 1.0}) == 10.0);
  CHECK(p.degree() == 2);
  CHECK(p.half_degree() == 1);

  // det of the 3x3 identity written as a 9-variable cubic evaluates to 1.
  poly::Polynomial det(9);
  const int perm[6][3] = {{0, 4, 8}, {1, 5, 6}, {2, 3, 7},
                          {2, 4, 6}, {1, 3, 8}, {0, 5, 7}};
  const double sgn[6] = {1, 1, 1, -1, -1, -1};
  for (int k = 0; k < 6; ++k) {
    MultiIndex a(9, 0);
    a[perm[k][0]]++;
    a[perm[k][1]]++;
    a[perm[k][2]]++;
    det.add_term(a, sgn[k]);
  }
  la::Vector ident{1, 0, 0, 0, 1, 0, 0, 0, 1};
  CHECK(poly::poly_eval(det, ident) == 1.0);

  // empty polynomial: degree 0, evaluates to 0
  poly::Polynomial zero(2);
  CHECK(zero.degree() == 0);
  CHECK(poly::poly_eval(zero, {3.0, 4.0}) == 0.0);

  CHECK_THROWS_AS(poly::poly_eval(p, {1.0}), Error);
}

TEST_CASE("riesz functional: coefficient pairing and dirac consistency") {
  poly::Polynomial p = example_poly();
  poly::MomentVector y;
  y.n = 2;
  y.order = 2;
  // values indexed [00, 10, 01, 20, 11, 02]
  y.values = {10.0, 20.0, 30.0, 40.0, 50.0, 60.0};
  // L_y(p) = y00 + 2 y01 + 3 y20 + 4 y11
  CHECK(poly::riesz(y, p) == 10.0 + 2.0 * 30.0 + 3.0 * 40.0 + 4.0 * 50.0);

  sim::SplitMix64 rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    la::Vector x{rng.next_uniform(-2, 2), rng.next_uniform(-2, 2)};
    poly::MomentVector dir = poly::dirac_moments(x, 2);
    CHECK(poly::riesz(dir, p) ==
          doctest::Approx(poly::poly_eval(p, x)).epsilon(1e-14));
  }

  poly::Polynomial cubic(2);
  cubic.add_term({3, 0}, 1.0);
  CHECK_THROWS_AS(poly::riesz(y, cubic), Error);
}

TEST_CASE("riesz linearity in both arguments") {
  sim::SplitMix64 rng(6);
  for (int rep = 0; rep < 30; ++rep) {
    poly::MomentVector y1 = random_moments(rng, 2, 3);
    poly::MomentVector y2 = random_moments(rng, 2, 3);
    poly::Polynomial p(2), q(2);
    const poly::MonomialBasis& b = poly::cached_basis(2, 3);
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (rng.next_unit() < 0.6) p.add_term(b.at(i), rng.next_uniform(-2, 2));
      if (rng.next_unit() < 0.6) q.add_term(b.at(i), rng.next_uniform(-2, 2));
    }
    const double a = rng.next_uniform(-2, 2);
    poly::Polynomial pq = p;
    pq += q;
    CHECK(poly::riesz(y1, pq) ==
          doctest::Approx(poly::riesz(y1, p) + poly::riesz(y1, q)).epsilon(1e-12));
    poly::MomentVector mix = y1;
    for (std::size_t i = 0; i < mix.values.size(); ++i)
      mix.values[i] = y1.values[i] + a * y2.values[i];
    CHECK(poly::riesz(mix, p) ==
          doctest::Approx(poly::riesz(y1, p) + a * poly::riesz(y2, p))
              .epsilon(1e-12));
  }
}

TEST_CASE("moment matrix layout matches the displayed M1 and M2") {
  sim::SplitMix64 rng(7);
  poly::MomentVector y = random_moments(rng, 2, 4);
  const poly::MonomialBasis& b4 = poly::cached_basis(2, 4);
  auto v = [&](int i, int j) { return y.values[b4.index_of({i, j})]; };

  la::Matrix m1 = poly::moment_matrix(y, 1);
  REQUIRE(m1.rows() == 3);
  // rows: [y00 y10 y01; y10 y20 y11; y01 y11 y02]
  const double want1[3][3] = {{v(0, 0), v(1, 0), v(0, 1)},
                              {v(1, 0), v(2, 0), v(1, 1)},
                              {v(0, 1), v(1, 1), v(0, 2)}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(m1(i, j) == want1[i][j]);

  la::Matrix m2 = poly::moment_matrix(y, 2);
  REQUIRE(m2.rows() == 6);
  const double want2[6][6] = {
      {v(0, 0), v(1, 0), v(0, 1), v(2, 0), v(1, 1), v(0, 2)},
      {v(1, 0), v(2, 0), v(1, 1), v(3, 0), v(2, 1), v(1, 2)},
      {v(0, 1), v(1, 1), v(0, 2), v(2, 1), v(1, 2), v(0, 3)},
      {v(2, 0), v(3, 0), v(2, 1), v(4, 0), v(3, 1), v(2, 2)},
      {v(1, 1), v(2, 1), v(1, 2), v(3, 1), v(2, 2), v(1, 3)},
      {v(0, 2), v(1, 2), v(0, 3), v(2, 2), v(1, 3), v(0, 4)}};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(m2(i, j) == want2[i][j]);
}

TEST_CASE("localizing matrix of q = a + 2 x1^2 + 3 x2^2 matches M1(qy)") {
  sim::SplitMix64 rng(8);
  poly::MomentVector y = random_moments(rng, 2, 4);
  const poly::MonomialBasis& b4 = poly::cached_basis(2, 4);
  auto v = [&](int i, int j) { return y.values[b4.index_of({i, j})]; };
  const double a = rng.next_uniform(0.5, 3.0);

  poly::Polynomial q(2);
  q.add_term({0, 0}, a);
  q.add_term({2, 0}, 2.0);
  q.add_term({0, 2}, 3.0);

  la::Matrix loc = poly::localizing_matrix(y, q, 1);
  REQUIRE(loc.rows() == 3);
  const double want[3][3] = {
      {a * v(0, 0) + 2 * v(2, 0) + 3 * v(0, 2),
       a * v(1, 0) + 2 * v(3, 0) + 3 * v(1, 2),
       a * v(0, 1) + 2 * v(2, 1) + 3 * v(0, 3)},
      {a * v(1, 0) + 2 * v(3, 0) + 3 * v(1, 2),
       a * v(2, 0) + 2 * v(4, 0) + 3 * v(2, 2),
       a * v(1, 1) + 2 * v(3, 1) + 3 * v(1, 3)},
      {a * v(0, 1) + 2 * v(2, 1) + 3 * v(0, 3),
       a * v(1, 1) + 2 * v(3, 1) + 3 * v(1, 3),
       a * v(0, 2) + 2 * v(2, 2) + 3 * v(0, 4)}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(loc(i, j) == doctest::Approx(want[i][j]).epsilon(1e-15));
}

TEST_CASE("localizing with q == 1 equals the moment matrix") {
  sim::SplitMix64 rng(9);
  poly::MomentVector y = random_moments(rng, 3, 4);
  poly::Polynomial one = poly::Polynomial::constant(3, 1.0);
  la::Matrix m = poly::moment_matrix(y, 2);
  la::Matrix l = poly::localizing_matrix(y, one, 2);
  REQUIRE(m.rows() == l.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) CHECK(m(i, j) == l(i, j));
}

TEST_CASE("moment matrix is symmetric bitwise and linear in y") {
  sim::SplitMix64 rng(10);
  poly::MomentVector y1 = random_moments(rng, 2, 4);
  poly::MomentVector y2 = random_moments(rng, 2, 4);
  la::Matrix m1 = poly::moment_matrix(y1, 2);
  for (std::size_t i = 0; i < m1.rows(); ++i)
    for (std::size_t j = 0; j < m1.cols(); ++j) CHECK(m1(i, j) == m1(j, i));

  const double a = 0.7, b = -1.3;
  poly::MomentVector mix = y1;
  for (std::size_t i = 0; i < mix.values.size(); ++i)
    mix.values[i] = a * y1.values[i] + b * y2.values[i];
  la::Matrix mm = poly::moment_matrix(mix, 2);
  la::Matrix m2 = poly::moment_matrix(y2, 2);
  for (std::size_t i = 0; i < mm.rows(); ++i)
    for (std::size_t j = 0; j < mm.cols(); ++j)
      CHECK(mm(i, j) ==
            doctest::Approx(a * m1(i, j) + b * m2(i, j)).epsilon(1e-14));
}

TEST_CASE("dirac moments: values, rank-1 psd moment matrix") {
  poly::MomentVector zero = poly::dirac_moments({0.0, 0.0}, 2);
  CHECK(zero.values[0] == 1.0);
  for (std::size_t i = 1; i < zero.values.size(); ++i) CHECK(zero.values[i] == 0.0);

  poly::MomentVector ones = poly::dirac_moments({1.0, 1.0}, 2);
  for (double v : ones.values) CHECK(v == 1.0);

  poly::MomentVector d = poly::dirac_moments({2.0, 3.0}, 2);
  const poly::MonomialBasis& b = poly::cached_basis(2, 2);
  CHECK(d.values[b.index_of({1, 1})] == 6.0);
  CHECK(d.values[b.index_of({2, 0})] == 4.0);

  sim::SplitMix64 rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    la::Vector x{rng.next_uniform(-10, 10), rng.next_uniform(-10, 10)};
    for (int t = 1; t <= 2; ++t) {
      poly::MomentVector dm = poly::dirac_moments(x, 2 * t);
      la::Matrix m = poly::moment_matrix(dm, t);
      la::SymEig e = la::sym_eig(m);
      CHECK(e.values.back() >= -1e-10);
      // rank 1: second eigenvalue negligible against the first
      CHECK(std::fabs(e.values[1]) <= 1e-12 * std::max(e.values[0], 1.0));
    }
  }
}

TEST_CASE("order overflow errors") {
  poly::MomentVector y;
  y.n = 2;
  y.order = 2;
  y.values.assign(6, 1.0);
  CHECK_THROWS_AS(poly::moment_matrix(y, 2), Error);
  poly::Polynomial q(2);
  q.add_term({1, 0}, 1.0);
  CHECK_THROWS_AS(poly::localizing_matrix(y, q, 1), Error);
}
