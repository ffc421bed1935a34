#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "fmb/la/factor.hpp"
#include "fmb/la/small.hpp"
#include "fmb/sim/rng.hpp"
#include "fmb/simd/kernels.hpp"

using namespace fmb;

namespace {

la::Vector random_vector(sim::SplitMix64& rng, std::size_t n, double lo = -1.0,
                         double hi = 1.0) {
  la::Vector v(n);
  for (double& x : v) x = rng.next_uniform(lo, hi);
  return v;
}

la::Matrix random_matrix(sim::SplitMix64& rng, std::size_t r, std::size_t c) {
  la::Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.next_uniform(-1.0, 1.0);
  return m;
}

la::Matrix random_spd(sim::SplitMix64& rng, std::size_t n) {
  la::Matrix b = random_matrix(rng, n, n);
  la::Matrix a = la::multiply_nt(b, b);
  for (std::size_t i = 0; i < n; ++i) a(i, i) += static_cast<double>(n);
  return a;
}

}  // namespace

TEST_CASE("kernel variants agree on random inputs") {
  const simd::Kernels& ref = simd::scalar_kernels();
  const simd::Kernels* vec = simd::avx2_kernels();
  sim::SplitMix64 rng(7);
  for (std::size_t n : {1u, 3u, 4u, 7u, 16u, 55u, 231u, 1024u}) {
    la::Vector x = random_vector(rng, n);
    la::Vector y = random_vector(rng, n);
    const double d_ref = ref.dot(x.data(), y.data(), n);
    if (vec != nullptr) {
      const double d_vec = vec->dot(x.data(), y.data(), n);
      CHECK(d_vec == doctest::Approx(d_ref).epsilon(1e-13));
    }

    la::Vector y0 = random_vector(rng, n), y1 = random_vector(rng, n);
    la::Vector y2 = random_vector(rng, n), y3 = random_vector(rng, n);
    const double* rows[4] = {y0.data(), y1.data(), y2.data(), y3.data()};
    double out_ref[4], out_vec[4];
    ref.dot4(x.data(), rows, n, out_ref);
    if (vec != nullptr) {
      vec->dot4(x.data(), rows, n, out_vec);
      for (int k = 0; k < 4; ++k)
        CHECK(out_vec[k] == doctest::Approx(out_ref[k]).epsilon(1e-13));
    }

    la::Vector acc_ref = y;
    ref.axpy(0.37, x.data(), acc_ref.data(), n);
    if (vec != nullptr) {
      la::Vector acc_vec = y;
      vec->axpy(0.37, x.data(), acc_vec.data(), n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(acc_vec[i] == doctest::Approx(acc_ref[i]).epsilon(1e-13));
    }

    la::Vector acc2_ref = y;
    ref.axpy2(0.5, x.data(), -1.25, y0.data(), acc2_ref.data(), n);
    if (vec != nullptr) {
      la::Vector acc2_vec = y;
      vec->axpy2(0.5, x.data(), -1.25, y0.data(), acc2_vec.data(), n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(acc2_vec[i] == doctest::Approx(acc2_ref[i]).epsilon(1e-13));
    }
  }
}

TEST_CASE("blocked cholesky factors and solves") {
  sim::SplitMix64 rng(11);
  for (std::size_t n : {1u, 4u, 17u, 64u, 65u, 130u}) {
    la::Matrix a = random_spd(rng, n);
    la::Matrix l = a;
    REQUIRE(la::cholesky_in_place(l));
    la::Matrix rec = la::multiply_nt(l, l);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        err = std::max(err, std::fabs(rec(i, j) - a(i, j)));
    CHECK(err <= 1e-10 * n);

    la::Vector x_true = random_vector(rng, n);
    la::Vector b = la::multiply(a, x_true);
    la::solve_cholesky(l, b);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(b[i] == doctest::Approx(x_true[i]).epsilon(1e-8));
  }
}

TEST_CASE("cholesky rejects indefinite matrices; regularization recovers") {
  la::Matrix a(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = -1.0;
  la::Matrix l = a;
  CHECK_FALSE(la::cholesky_in_place(l));
  la::Matrix r = a;
  CHECK(la::cholesky_regularized(r, 1e-8) > 1.0);  // needed a visible shift
}

TEST_CASE("jacobi eigendecomposition: random symmetric") {
  sim::SplitMix64 rng(13);
  for (std::size_t n : {2u, 5u, 21u, 55u}) {
    la::Matrix a = random_matrix(rng, n, n);
    la::symmetrize(a);
    la::SymEig e = la::sym_eig(a);
    for (std::size_t j = 0; j + 1 < n; ++j) CHECK(e.values[j] >= e.values[j + 1]);
    // A v = lambda v and V orthonormal
    for (std::size_t j = 0; j < n; ++j) {
      la::Vector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = e.vectors(i, j);
      la::Vector av = la::multiply(a, v);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(av[i] == doctest::Approx(e.values[j] * v[i]).epsilon(1e-9).scale(1.0 + std::fabs(e.values[j])));
    }
    la::Matrix vtv = la::multiply_tn(e.vectors, e.vectors);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(vtv(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-11));
  }
}

TEST_CASE("one-sided jacobi svd reconstructs and orthogonalizes") {
  sim::SplitMix64 rng(17);
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{3, 3},
                      {4, 4},
                      {10, 6},
                      {55, 55},
                      {8, 9}}) {
    la::Matrix a = random_matrix(rng, m, n);
    la::Svd sv = la::svd(a);
    for (std::size_t j = 0; j + 1 < n; ++j) CHECK(sv.sigma[j] >= sv.sigma[j + 1]);
    // reconstruct
    la::Matrix us(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) us(i, j) = sv.u(i, j) * sv.sigma[j];
    la::Matrix rec = la::multiply_nt(us, sv.v);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(rec(i, j) == doctest::Approx(a(i, j)).epsilon(1e-10).scale(1.0));
    la::Matrix vtv = la::multiply_tn(sv.v, sv.v);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(vtv(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-11));
  }
}

TEST_CASE("svd of a rank-1 matrix completes u deterministically") {
  la::Matrix a(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = (i + 1.0) * (j + 1.0);
  la::Svd sv = la::svd(a);
  CHECK(sv.sigma[0] > 1.0);
  CHECK(sv.sigma[1] <= 1e-12 * sv.sigma[0]);
  la::Matrix utu = la::multiply_tn(sv.u, sv.u);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(utu(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
}

TEST_CASE("real schur recovers known real eigenvalues") {
  sim::SplitMix64 rng(19);
  for (std::size_t n : {2u, 3u, 6u, 12u}) {
    // A = V D V^{-1} with distinct real eigenvalues
    la::Vector d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = -3.0 + 1.37 * static_cast<double>(i);
    la::Matrix v = random_matrix(rng, n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) += 3.0;
    // A = V D V^{-1}: solve A V = V D column-wise => A = (V D) V^{-1}
    la::Matrix vd(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) vd(i, j) = v(i, j) * d[j];
    // Compute V^{-1} column by column.
    la::Matrix vinv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      la::Vector e(n, 0.0);
      e[j] = 1.0;
      REQUIRE(la::lu_solve(v, e));
      for (std::size_t i = 0; i < n; ++i) vinv(i, j) = e[i];
    }
    la::Matrix a = la::multiply(vd, vinv);

    la::RealSchur sch = la::real_schur(a, true);
    REQUIRE(sch.converged);
    // Z orthogonal, Z T Z^T = A, all eigenvalues real and matching.
    la::Matrix ztz = la::multiply_tn(sch.z, sch.z);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(ztz(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
    la::Matrix rec = la::multiply(la::multiply(sch.z, sch.t), la::transpose(sch.z));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(rec(i, j) == doctest::Approx(a(i, j)).epsilon(1e-7).scale(10.0));

    auto ev = la::schur_eigenvalues(sch.t);
    std::vector<double> got;
    for (auto& z : ev) {
      CHECK(std::fabs(z.imag()) <= 1e-7);
      got.push_back(z.real());
    }
    std::sort(got.begin(), got.end());
    for (std::size_t i = 0; i < n; ++i)
      CHECK(got[i] == doctest::Approx(d[i]).epsilon(1e-7));
  }
}

TEST_CASE("real schur keeps complex pairs as 2x2 blocks") {
  la::Matrix a(2, 2);
  a(0, 0) = 0.0;
  a(0, 1) = -1.0;
  a(1, 0) = 1.0;
  a(1, 1) = 0.0;
  la::RealSchur sch = la::real_schur(a, true);
  REQUIRE(sch.converged);
  auto ev = la::schur_eigenvalues(sch.t);
  REQUIRE(ev.size() == 2);
  CHECK(std::fabs(ev[0].imag()) == doctest::Approx(1.0));
  CHECK(ev[0].real() == doctest::Approx(0.0));
}

TEST_CASE("lu solve") {
  sim::SplitMix64 rng(23);
  la::Matrix a = random_matrix(rng, 11, 11);
  for (int i = 0; i < 11; ++i) a(i, i) += 4.0;
  la::Vector x_true = random_vector(rng, 11);
  la::Vector b = la::multiply(a, x_true);
  REQUIRE(la::lu_solve(a, b));
  for (int i = 0; i < 11; ++i)
    CHECK(b[i] == doctest::Approx(x_true[i]).epsilon(1e-10));
}

TEST_CASE("mat3 helpers") {
  la::Mat3 m;
  m(0, 0) = 2.0;
  m(0, 1) = 1.0;
  m(1, 1) = 3.0;
  m(2, 2) = 4.0;
  m(2, 0) = -1.0;
  la::Mat3 inv = la::inverse(m);
  la::Mat3 prod = la::mul(m, inv);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(prod(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));

  la::Vec3 v{1.0, -2.0, 0.5};
  la::Mat3 k = la::cross_matrix(v);
  la::Vec3 w{0.3, 0.7, -1.1};
  la::Vec3 kw = la::mul(k, w);
  la::Vec3 cx = la::cross(v, w);
  for (int i = 0; i < 3; ++i) CHECK(kw[i] == doctest::Approx(cx[i]));
}
