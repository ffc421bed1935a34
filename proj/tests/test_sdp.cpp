#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fmb/la/factor.hpp"
#include "fmb/sdp/solver.hpp"

using namespace fmb;

namespace {

// min -y01 over the first moment relaxation of the two-variable benchmark
// problem, written out by hand: variables (y00, y10, y01, y20, y11, y02).
sdp::SdpProblem hand_q1() {
  sdp::SdpProblem p;
  p.num_vars = 6;
  p.cost = {0, 0, -1, 0, 0, 0};
  p.equalities.push_back({{{0, 1.0}}, 1.0});  // y00 = 1

  sdp::Block m1;
  m1.dim = 3;
  m1.terms = {
      {0, {{0, 0, 1.0}}}, {1, {{0, 1, 1.0}}}, {2, {{0, 2, 1.0}}},
      {3, {{1, 1, 1.0}}}, {4, {{1, 2, 1.0}}}, {5, {{2, 2, 1.0}}},
  };
  p.blocks.push_back(m1);

  sdp::Block g1;  // 3 y00 + 2 y01 - y20 - y02 >= 0
  g1.dim = 1;
  g1.terms = {{0, {{0, 0, 3.0}}},
              {2, {{0, 0, 2.0}}},
              {3, {{0, 0, -1.0}}},
              {5, {{0, 0, -1.0}}}};
  p.blocks.push_back(g1);

  sdp::Block g2;  // -y10 - y01 - y11 >= 0
  g2.dim = 1;
  g2.terms = {{1, {{0, 0, -1.0}}}, {2, {{0, 0, -1.0}}}, {4, {{0, 0, -1.0}}}};
  p.blocks.push_back(g2);

  sdp::Block g3;  // y00 + y11 >= 0
  g3.dim = 1;
  g3.terms = {{0, {{0, 0, 1.0}}}, {4, {{0, 0, 1.0}}}};
  p.blocks.push_back(g3);
  return p;
}

void check_kkt(const sdp::SdpProblem& p, const sdp::SdpSolution& sol,
               double gap_tol, double feas_tol) {
  CHECK(sol.gap <= gap_tol);
  CHECK(sol.primal_residual <= feas_tol);
  CHECK(sol.dual_residual <= feas_tol);
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    la::SymEig e = la::sym_eig(sol.block_values[b]);
    const double scale = 1.0 + std::fabs(e.values[0]);
    CHECK(e.values.back() >= -feas_tol * scale);
    la::SymEig ex = la::sym_eig(sol.block_multipliers[b]);
    CHECK(ex.values.back() >= -feas_tol * (1.0 + std::fabs(ex.values[0])));
  }
}

}  // namespace

TEST_CASE("2x2 psd boundary: min y s.t. [[1,y],[y,1]] psd") {
  sdp::SdpProblem p;
  p.num_vars = 1;
  p.cost = {1.0};
  sdp::Block b;
  b.dim = 2;
  b.terms = {{0, {{0, 1, 1.0}}}};
  b.constant = {{0, 0, -1.0}, {1, 1, -1.0}};  // S = y*B - D with D = -I
  p.blocks.push_back(b);

  sdp::SdpSolution sol = sdp::solve_sdp(p);
  REQUIRE(sol.status == sdp::SolveStatus::Optimal);
  CHECK(sol.y[0] == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(sol.objective == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("scalar blocks without equalities") {
  // min y0 + 2 y1 s.t. y0 >= 0.3, y1 >= -0.7
  sdp::SdpProblem p;
  p.num_vars = 2;
  p.cost = {1.0, 2.0};
  sdp::Block b0;
  b0.dim = 1;
  b0.terms = {{0, {{0, 0, 1.0}}}};
  b0.constant = {{0, 0, 0.3}};
  sdp::Block b1;
  b1.dim = 1;
  b1.terms = {{1, {{0, 0, 1.0}}}};
  b1.constant = {{0, 0, -0.7}};
  p.blocks.push_back(b0);
  p.blocks.push_back(b1);

  sdp::SdpSolution sol = sdp::solve_sdp(p);
  REQUIRE(sol.status == sdp::SolveStatus::Optimal);
  CHECK(sol.y[0] == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(sol.y[1] == doctest::Approx(-0.7).epsilon(1e-7));
}

TEST_CASE("hand-built first relaxation solves to -2 with KKT certificates") {
  sdp::SdpProblem p = hand_q1();
  sdp::SdpSolution sol = sdp::solve_sdp(p);
  REQUIRE(sol.status == sdp::SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(sol.y[0] == doctest::Approx(1.0).epsilon(1e-7));
  check_kkt(p, sol, 1e-8, 1e-7);
}

TEST_CASE("determinism: repeated solves produce identical outputs") {
  sdp::SdpProblem p = hand_q1();
  sdp::SdpSolution a = sdp::solve_sdp(p);
  sdp::SdpSolution b = sdp::solve_sdp(p);
  CHECK(a.objective == b.objective);  // bitwise
  CHECK(a.iterations == b.iterations);
  CHECK(a.gap == b.gap);
  for (std::size_t i = 0; i < a.y.size(); ++i) CHECK(a.y[i] == b.y[i]);
}

TEST_CASE("merit at the returned iterate never exceeds the initial merit") {
  sdp::SdpProblem p = hand_q1();
  // Strangle the iteration budget: the solver must return its best iterate.
  sdp::SolverOptions opts;
  opts.max_iter = 3;
  sdp::SdpSolution sol = sdp::solve_sdp(p, opts);
  CHECK(sol.status == sdp::SolveStatus::MaxIter);
  // Initial iterate has y = 0: equality residual |1 - 0| = 1 -> merit >= ~0.25.
  CHECK(sol.gap + sol.primal_residual + sol.dual_residual <= 1.0);
}

TEST_CASE("redundant equality rows are dropped by presolve") {
  sdp::SdpProblem p = hand_q1();
  p.equalities.push_back({{{0, 2.0}}, 2.0});  // 2 y00 = 2, same hyperplane
  sdp::SdpSolution sol = sdp::solve_sdp(p);
  REQUIRE(sol.status == sdp::SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(-2.0).epsilon(1e-6));
}

TEST_CASE("sdp dump emits sizes and triplets") {
  sdp::SdpProblem p = hand_q1();
  std::ostringstream os;
  sdp::dump_sdp(p, os);
  const std::string text = os.str();
  CHECK(text.find("vars 6") != std::string::npos);
  CHECK(text.find("blocks 4") != std::string::npos);
  CHECK(text.find("block 3 6 0") != std::string::npos);
  CHECK(text.find("equalities 1") != std::string::npos);
}
