#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fmb/error.hpp"
#include "fmb/la/factor.hpp"
#include "fmb/lasserre/relaxation.hpp"
#include "fmb/sim/rng.hpp"

using namespace fmb;
using poly::MultiIndex;

namespace {

// The two-variable benchmark problem:
//   min -x2  s.t.  3 + 2 x2 - x1^2 - x2^2 >= 0,
//                  -x1 - x2 - x1 x2 >= 0,
//                  1 + x1 x2 >= 0.
// Its first relaxation value is -2; the second is exact at
// -(1+sqrt(5))/2 with the unique minimizer (1-phi, phi).
lasserre::SemiAlgebraicProblem benchmark2d() {
  lasserre::SemiAlgebraicProblem prob;
  prob.n = 2;
  prob.objective = poly::Polynomial(2);
  prob.objective.add_term({0, 1}, -1.0);

  poly::Polynomial g1(2);
  g1.add_term({0, 0}, 3.0);
  g1.add_term({0, 1}, 2.0);
  g1.add_term({2, 0}, -1.0);
  g1.add_term({0, 2}, -1.0);
  poly::Polynomial g2(2);
  g2.add_term({1, 0}, -1.0);
  g2.add_term({0, 1}, -1.0);
  g2.add_term({1, 1}, -1.0);
  poly::Polynomial g3(2);
  g3.add_term({0, 0}, 1.0);
  g3.add_term({1, 1}, 1.0);
  prob.inequalities = {g1, g2, g3};
  return prob;
}

constexpr double kPhi = 1.6180339887498948482;

poly::Polynomial det9() {
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
  return det;
}

}  // namespace

TEST_CASE("numerical rank") {
  CHECK(lasserre::numerical_rank(la::Matrix::identity(5), 1e-3) == 5);

  la::Matrix outer(4, 4);
  const double v[4] = {1.0, -2.0, 0.5, 3.0};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) outer(i, j) = v[i] * v[j];
  CHECK(lasserre::numerical_rank(outer, 1e-3) == 1);

  la::Matrix diag(3, 3);
  diag(0, 0) = 1.0;
  diag(1, 1) = 1e-2;
  diag(2, 2) = 1e-8;
  CHECK(lasserre::numerical_rank(diag, 1e-3) == 2);
}

TEST_CASE("build dimensions: benchmark problem orders 1 and 2") {
  lasserre::SemiAlgebraicProblem prob = benchmark2d();
  CHECK(lasserre::min_order(prob) == 1);

  sdp::SdpProblem q1 = lasserre::build_relaxation(prob, 1);
  CHECK(q1.num_vars == 6);
  REQUIRE(q1.blocks.size() == 4);
  CHECK(q1.blocks[0].dim == 3);
  CHECK(q1.blocks[1].dim == 1);
  CHECK(q1.blocks[2].dim == 1);
  CHECK(q1.blocks[3].dim == 1);
  CHECK(q1.equalities.size() == 1);  // y0 = 1

  sdp::SdpProblem q2 = lasserre::build_relaxation(prob, 2);
  CHECK(q2.num_vars == 15);
  REQUIRE(q2.blocks.size() == 4);
  CHECK(q2.blocks[0].dim == 6);
  CHECK(q2.blocks[1].dim == 3);
  CHECK(q2.blocks[2].dim == 3);
  CHECK(q2.blocks[3].dim == 3);

  CHECK_THROWS_AS(lasserre::build_relaxation(prob, 0), Error);
}

TEST_CASE("build dimensions: rank-constrained 9-variable problem at order 2") {
  lasserre::SemiAlgebraicProblem prob;
  prob.n = 9;
  prob.objective = poly::Polynomial(9);
  MultiIndex sq(9, 0);
  sq[0] = 2;
  prob.objective.add_term(sq, 1.0);
  poly::Polynomial norm(9);
  for (int i = 0; i < 9; ++i) {
    MultiIndex a(9, 0);
    a[i] = 2;
    norm.add_term(a, 1.0);
  }
  norm.add_term(MultiIndex(9, 0), -1.0);
  prob.equalities = {det9(), norm};
  CHECK(lasserre::min_order(prob) == 2);

  sdp::SdpProblem sp = lasserre::build_relaxation(prob, 2);
  CHECK(sp.num_vars == 715);  // s(4) for n = 9
  REQUIRE(sp.blocks.size() == 1);
  CHECK(sp.blocks[0].dim == 55);  // s(2) moment block
  // y0 = 1, 10 shifts of the cubic equality, 55 shifts of the quadratic one.
  CHECK(sp.equalities.size() == 1 + 10 + 55);
}

TEST_CASE("hierarchy on the benchmark problem: -2 then the exact golden value") {
  lasserre::SemiAlgebraicProblem prob = benchmark2d();

  lasserre::RelaxationResult r1 = lasserre::solve_relaxation(prob, 1);
  REQUIRE(r1.solver_status == sdp::SolveStatus::Optimal);
  CHECK(r1.optimum == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(r1.moments.values[0] == doctest::Approx(1.0).epsilon(1e-7));

  lasserre::RelaxationResult r2 = lasserre::solve_relaxation(prob, 2);
  REQUIRE(r2.solver_status == sdp::SolveStatus::Optimal);
  CHECK(r2.optimum == doctest::Approx(-kPhi).epsilon(1e-6));
  CHECK(r2.certified);
  REQUIRE(r2.moment_matrix_ranks.size() == 3);
  CHECK(r2.moment_matrix_ranks[2] == 1);
  REQUIRE(r2.minimizers.size() == 1);
  CHECK(r2.minimizers[0][0] == doctest::Approx(1.0 - kPhi).epsilon(1e-5));
  CHECK(r2.minimizers[0][1] == doctest::Approx(kPhi).epsilon(1e-5));
  CHECK(prob.objective.eval(r2.minimizers[0]) ==
        doctest::Approx(r2.optimum).epsilon(1e-5));

  // Monotonicity of the hierarchy.
  CHECK(r1.optimum <= r2.optimum + 1e-7);
}

TEST_CASE("zero objective with unit-circle equality") {
  lasserre::SemiAlgebraicProblem prob;
  prob.n = 2;
  prob.objective = poly::Polynomial(2);  // identically zero
  poly::Polynomial circle(2);
  circle.add_term({2, 0}, 1.0);
  circle.add_term({0, 2}, 1.0);
  circle.add_term({0, 0}, -1.0);
  prob.equalities = {circle};
  lasserre::RelaxationResult r = lasserre::solve_relaxation(prob, 1);
  REQUIRE(r.solver_status == sdp::SolveStatus::Optimal);
  CHECK(r.optimum == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(r.moments.values[0] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("certificate on dirac moments and on a two-atom mixture") {
  la::Vector x{0.4, -0.9};
  poly::MomentVector dir = poly::dirac_moments(x, 4);
  auto [ranks, cert] = lasserre::check_certificate(dir, 2, 1, 1e-3);
  CHECK(cert);
  CHECK(ranks[0] == 1);
  CHECK(ranks[1] == 1);
  CHECK(ranks[2] == 1);
  auto pts = lasserre::extract_minimizers(dir, 2, 1);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0][0] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(pts[0][1] == doctest::Approx(-0.9).epsilon(1e-12));

  la::Vector a{0.3, -0.7};
  la::Vector b{-0.5, 0.2};
  poly::MomentVector ya = poly::dirac_moments(a, 4);
  poly::MomentVector yb = poly::dirac_moments(b, 4);
  poly::MomentVector mix = ya;
  for (std::size_t i = 0; i < mix.values.size(); ++i)
    mix.values[i] = 0.5 * (ya.values[i] + yb.values[i]);

  auto [ranks2, cert2] = lasserre::check_certificate(mix, 2, 1, 1e-3);
  CHECK(cert2);
  CHECK(ranks2[1] == 2);
  CHECK(ranks2[2] == 2);

  auto atoms = lasserre::extract_minimizers(mix, 2, 2);
  REQUIRE(atoms.size() == 2);
  // Match up to ordering.
  auto close = [](const la::Vector& u, const la::Vector& v) {
    return std::fabs(u[0] - v[0]) < 1e-6 && std::fabs(u[1] - v[1]) < 1e-6;
  };
  const bool direct = close(atoms[0], a) && close(atoms[1], b);
  const bool swapped = close(atoms[0], b) && close(atoms[1], a);
  CHECK((direct || swapped));
}

TEST_CASE("round trip: relaxation of a single-point feasible set") {
  // ||x||^2 = 1 intersected with x1 = x2 and x1 + x2 = sqrt(2) * x1 * 2 ...
  // simpler: x1 = 0.6, x2 = 0.8 via two hyperplanes plus the circle.
  lasserre::SemiAlgebraicProblem prob;
  prob.n = 2;
  prob.objective = poly::Polynomial(2);
  prob.objective.add_term({1, 0}, 1.0);  // min x1
  poly::Polynomial circle(2);
  circle.add_term({2, 0}, 1.0);
  circle.add_term({0, 2}, 1.0);
  circle.add_term({0, 0}, -1.0);
  poly::Polynomial plane(2);  // 4 x1 - 3 x2 = 0 pins direction
  plane.add_term({1, 0}, 4.0);
  plane.add_term({0, 1}, -3.0);
  poly::Polynomial half(2);  // x1 >= 0.1 picks one intersection point
  half.add_term({1, 0}, 1.0);
  half.add_term({0, 0}, -0.1);
  prob.equalities = {circle, plane};
  prob.inequalities = {half};

  lasserre::RelaxationResult r = lasserre::solve_relaxation(prob, 2);
  REQUIRE(r.solver_status == sdp::SolveStatus::Optimal);
  CHECK(r.certified);
  REQUIRE_FALSE(r.minimizers.empty());
  CHECK(r.minimizers[0][0] == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(r.minimizers[0][1] == doctest::Approx(0.8).epsilon(1e-6));
}

TEST_CASE("extraction validates feasibility of atoms") {
  // Moments of a point off the constraint set: solve_relaxation would reject;
  // here extract_minimizers itself still returns the dirac atom.
  la::Vector x{2.0, 3.0};
  poly::MomentVector dir = poly::dirac_moments(x, 4);
  auto pts = lasserre::extract_minimizers(dir, 2, 1);
  CHECK(pts[0][0] == 2.0);
}
