#pragma once

#include <utility>
#include <vector>

#include "fmb/poly/moments.hpp"
#include "fmb/poly/polynomial.hpp"
#include "fmb/sdp/solver.hpp"

namespace fmb::lasserre {

// Polynomial problem over a basic semi-algebraic set:
//   minimize objective(x)
//   subject to g_j(x) >= 0 (inequalities) and h_k(x) = 0 (equalities).
// The feasible set must be bounded by at least one constraint; that is the
// caller's responsibility (the epipolar problems are compact via |F|^2 = 1).
struct SemiAlgebraicProblem {
  int n = 0;
  poly::Polynomial objective{1};
  std::vector<poly::Polynomial> inequalities;
  std::vector<poly::Polynomial> equalities;
};

// d_K: max over half-degrees of the objective and every constraint.
int min_order(const SemiAlgebraicProblem& prob);

struct RelaxationOptions {
  sdp::SolverOptions sdp;
  double rank_tol = 1e-3;   // relative, for the flat-rank certificate
  double feas_tol = 1e-6;   // constraint tolerance for extracted points
  double obj_tol = 1e-5;    // |f(x*) - fhat| <= obj_tol * (1 + |fhat|)
};

struct RelaxationResult {
  int order = 0;
  double optimum = 0.0;                  // fhat_t = L_y*(f)
  poly::MomentVector moments;            // y*
  std::vector<int> moment_matrix_ranks;  // rank M_s(y*), s = 0..t
  bool certified = false;
  // Extracted global minimizers when certified; otherwise one heuristic
  // candidate (the first-order moments), flagged by certified == false.
  std::vector<la::Vector> minimizers;
  sdp::SolveStatus solver_status = sdp::SolveStatus::NumericalFailure;
  double sdp_gap = 0.0;
  double sdp_primal_residual = 0.0;
  double sdp_dual_residual = 0.0;
  int sdp_iterations = 0;
};

// Order-t moment relaxation as a block SDP over y in R^{s(2t)}:
// y_0 = 1; M_t(y) PSD; localizing matrices of inequalities PSD; equalities
// become scalar linear constraints L_y(x^alpha h_k) = 0, |alpha| <= 2t-deg h.
sdp::SdpProblem build_relaxation(const SemiAlgebraicProblem& prob, int t);

RelaxationResult solve_relaxation(const SemiAlgebraicProblem& prob, int t,
                                  const RelaxationOptions& opts = {});

// Flat-rank global optimality test: rank M_t(y) == rank M_{t-d_K}(y); a
// rank-1 moment matrix always certifies. Returns (ranks for s=0..t, flag).
std::pair<std::vector<int>, bool> check_certificate(const poly::MomentVector& y,
                                                    int t, int d_k,
                                                    double rank_tol);

// Count of singular values above rank_tol * max(sigma_1, 1).
int numerical_rank(const la::Matrix& m, double rank_tol);

// Extract r global minimizers from a flat moment vector. r == 1 reads the
// first-order moments; r > 1 runs the multiplication-matrix method
// (Cholesky-style factor, column reduction, simultaneous Schur).
// Throws ErrorCode::ExtractionFailed when the numerical basis is inconsistent.
std::vector<la::Vector> extract_minimizers(const poly::MomentVector& y, int t,
                                           int r);

}  // namespace fmb::lasserre
