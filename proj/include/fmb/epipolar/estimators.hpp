#pragma once

#include "fmb/epipolar/types.hpp"
#include "fmb/poly/polynomial.hpp"
#include "fmb/sdp/solver.hpp"

namespace fmb::epipolar {

// Hartley isotropic normalization: per image, centroid to the origin and RMS
// distance to the origin sqrt(2).
std::pair<std::vector<PointMatch>, Standardization> standardize(
    const std::vector<PointMatch>& matches);

// sum_i (qp_i^T F q_i)^2
double algebraic_cost(const la::Mat3& f, const std::vector<PointMatch>& matches);

// Unconstrained unit-norm minimizer of the algebraic cost (right singular
// vector of the design matrix at its smallest singular value). Not rank-2.
la::Mat3 linear_f(const std::vector<PointMatch>& matches);

// Closest rank-2 matrix (smallest singular value zeroed), unit Frobenius.
FMatrix project_rank2(const la::Mat3& ftilde);

// Two-step estimator: standardize, linear solve, rank-2 projection,
// denormalize, rescale to unit Frobenius.
FMatrix eight_point(const std::vector<PointMatch>& matches);

struct GlobalOptions {
  int order = 2;
  bool standardize = true;
  double rank_tol = 1e-3;
  sdp::SolverOptions sdp;
};

// Certified globally optimal rank-constrained estimator: moment relaxation of
// min algebraic cost s.t. det(F) = 0, |F|^2 = 1, with minimizer extraction
// and a local constrained polish of the extracted point.
FMatrix global_f(const std::vector<PointMatch>& matches,
                 const GlobalOptions& opts = {});

// Deterministic sign convention shared by all estimators: the
// largest-magnitude entry is made positive. Also rescales to unit Frobenius.
void normalize_sign_scale(la::Mat3& f);

// The relaxation objective/constraints as polynomials in the 9 row-major
// entries of F (exposed for the oracle tests).
poly::Polynomial cost_polynomial(const std::vector<PointMatch>& matches);
poly::Polynomial det_polynomial();
poly::Polynomial unit_norm_polynomial();  // trace(F F^T) - 1

// One Gauss-Newton/SQP polish of a candidate on {det = 0, |F| = 1};
// returns the refined 9-vector (row-major).
la::Vector polish_on_manifold(const la::Vector& x0,
                              const std::vector<PointMatch>& matches,
                              int max_iter = 40);

}  // namespace fmb::epipolar
