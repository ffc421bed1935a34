#pragma once

#include "fmb/sdp/problem.hpp"

namespace fmb::sdp {

enum class SolveStatus {
  Optimal,
  SlowProgress,
  MaxIter,
  Infeasible,
  NumericalFailure,
};

const char* to_string(SolveStatus s);

struct SolverOptions {
  double gap_tol = 1e-9;
  double feas_tol = 1e-9;
  int max_iter = 200;
  double step_fraction = 0.98;
  // Stop with SlowProgress when the merit (gap + residuals) improves by less
  // than slow_rel relative over slow_window consecutive iterations.
  double slow_rel = 1e-2;
  int slow_window = 5;
  // Report Infeasible when residuals grow for diverge_window consecutive
  // iterations.
  int diverge_window = 10;
  bool verbose = false;  // per-iteration trace on stderr
};

struct SdpSolution {
  la::Vector y;
  std::vector<la::Matrix> block_values;        // S_b(y) at the solution
  la::Vector eq_multipliers;                   // one per equality row
  std::vector<la::Matrix> block_multipliers;   // dual PSD matrix per block
  double objective = 0.0;                      // cost . y
  double dual_objective = 0.0;
  double gap = 0.0;               // relative duality gap
  double primal_residual = 0.0;   // equality + LMI violation (relative)
  double dual_residual = 0.0;     // multiplier stationarity violation
  int iterations = 0;
  SolveStatus status = SolveStatus::NumericalFailure;
};

// Dense primal-dual path-following solve with Nesterov-Todd scaling and
// Mehrotra predictor-corrector. Deterministic for fixed input and options.
SdpSolution solve_sdp(const SdpProblem& prob, const SolverOptions& opts = {});

}  // namespace fmb::sdp
