#include <cmath>

#include "fmb/epipolar/estimators.hpp"
#include "fmb/error.hpp"
#include "fmb/la/factor.hpp"
#include "fmb/lasserre/relaxation.hpp"

namespace fmb::epipolar {

namespace {

void design_row(const PointMatch& m, double* row) {
  row[0] = m.qp[0] * m.q[0];
  row[1] = m.qp[0] * m.q[1];
  row[2] = m.qp[0] * m.q[2];
  row[3] = m.qp[1] * m.q[0];
  row[4] = m.qp[1] * m.q[1];
  row[5] = m.qp[1] * m.q[2];
  row[6] = m.qp[2] * m.q[0];
  row[7] = m.qp[2] * m.q[1];
  row[8] = m.qp[2] * m.q[2];
}

la::Mat3 from_vec9(const la::Vector& x) {
  la::Mat3 f;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) f(i, j) = x[3 * i + j];
  return f;
}

la::Vector to_vec9(const la::Mat3& f) {
  la::Vector x(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) x[3 * i + j] = f(i, j);
  return x;
}

// Gradient of det with respect to the row-major entries: the cofactor matrix.
la::Vector det_gradient(const la::Vector& x) {
  const la::Mat3 f = from_vec9(x);
  la::Vector g(9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      g[3 * i + j] = f(i1, j1) * f(i2, j2) - f(i1, j2) * f(i2, j1);
    }
  }
  return g;
}

// Exact restoration to the constraint manifold: nearest rank-2 matrix, then
// unit Frobenius norm.
la::Vector restore(const la::Vector& x) {
  la::Svd sv = la::svd(la::to_matrix(from_vec9(x)));
  la::Mat3 f;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      f(i, j) = sv.sigma[0] * sv.u(i, 0) * sv.v(j, 0) +
                sv.sigma[1] * sv.u(i, 1) * sv.v(j, 1);
    }
  }
  const double nrm = la::frobenius(f);
  la::Vector out = to_vec9(f);
  for (double& v : out) v /= nrm;
  return out;
}

}  // namespace

poly::Polynomial cost_polynomial(const std::vector<PointMatch>& matches) {
  poly::Polynomial cost(9);
  double row[9];
  for (const PointMatch& m : matches) {
    design_row(m, row);
    for (int i = 0; i < 9; ++i) {
      if (row[i] == 0.0) continue;
      for (int j = i; j < 9; ++j) {
        if (row[j] == 0.0) continue;
        poly::MultiIndex alpha(9, 0);
        alpha[i] += 1;
        alpha[j] += 1;
        cost.add_term(alpha, (i == j ? 1.0 : 2.0) * row[i] * row[j]);
      }
    }
  }
  return cost;
}

poly::Polynomial det_polynomial() {
  // Row-major entries x0..x8 of F; permutation expansion of det.
  poly::Polynomial det(9);
  const int perm[6][3] = {{0, 4, 8}, {1, 5, 6}, {2, 3, 7},
                          {2, 4, 6}, {1, 3, 8}, {0, 5, 7}};
  const double sign[6] = {1, 1, 1, -1, -1, -1};
  for (int k = 0; k < 6; ++k) {
    poly::MultiIndex alpha(9, 0);
    alpha[perm[k][0]] += 1;
    alpha[perm[k][1]] += 1;
    alpha[perm[k][2]] += 1;
    det.add_term(alpha, sign[k]);
  }
  return det;
}

poly::Polynomial unit_norm_polynomial() {
  poly::Polynomial p(9);
  for (int i = 0; i < 9; ++i) {
    poly::MultiIndex alpha(9, 0);
    alpha[i] = 2;
    p.add_term(alpha, 1.0);
  }
  p.add_term(poly::MultiIndex(9, 0), -1.0);
  return p;
}

la::Vector polish_on_manifold(const la::Vector& x0,
                              const std::vector<PointMatch>& matches,
                              int max_iter) {
  // Quadratic cost x^T A x with A from the design rows.
  la::Matrix a(9, 9);
  double row[9];
  for (const PointMatch& m : matches) {
    design_row(m, row);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) a(i, j) += row[i] * row[j];
  }
  auto cost_of = [&](const la::Vector& x) {
    const la::Vector ax = la::multiply(a, x);
    return la::dot(x, ax);
  };

  la::Vector x = restore(x0);
  double cost = cost_of(x);
  for (int iter = 0; iter < max_iter; ++iter) {
    // SQP step: min 0.5 d^T H d + g^T d  s.t.  J d = -c, with H = 2A.
    const la::Vector ax = la::multiply(a, x);
    la::Vector g(9);
    for (int i = 0; i < 9; ++i) g[i] = 2.0 * ax[i];
    const la::Vector dg = det_gradient(x);
    const double c1 = det_polynomial().eval(x);
    double c2 = -1.0;
    for (int i = 0; i < 9; ++i) c2 += x[i] * x[i];

    la::Matrix kkt(11, 11);
    la::Vector rhs(11);
    for (int i = 0; i < 9; ++i) {
      for (int j = 0; j < 9; ++j) kkt(i, j) = 2.0 * a(i, j);
      kkt(i, i) += 1e-11 * (1.0 + a(i, i));
      kkt(i, 9) = dg[i];
      kkt(9, i) = dg[i];
      kkt(i, 10) = 2.0 * x[i];
      kkt(10, i) = 2.0 * x[i];
      rhs[i] = -g[i];
    }
    rhs[9] = -c1;
    rhs[10] = -c2;
    if (!la::lu_solve(kkt, rhs)) break;

    double step_norm = 0.0;
    for (int i = 0; i < 9; ++i) step_norm += rhs[i] * rhs[i];
    step_norm = std::sqrt(step_norm);

    double scale = 1.0;
    bool accepted = false;
    for (int back = 0; back < 10; ++back) {
      la::Vector trial(9);
      for (int i = 0; i < 9; ++i) trial[i] = x[i] + scale * rhs[i];
      trial = restore(trial);
      const double trial_cost = cost_of(trial);
      if (trial_cost <= cost * (1.0 + 1e-12) + 1e-300) {
        x = std::move(trial);
        const bool tiny = trial_cost >= cost * (1.0 - 1e-13);
        cost = trial_cost;
        accepted = true;
        if (tiny && step_norm * scale < 1e-11) iter = max_iter;  // converged
        break;
      }
      scale *= 0.5;
    }
    if (!accepted) break;
    if (step_norm < 1e-13) break;
  }
  return x;
}

FMatrix global_f(const std::vector<PointMatch>& matches,
                 const GlobalOptions& opts) {
  if (matches.size() < 8) {
    fail(ErrorCode::TooFewMatches, "global estimator needs at least 8 matches");
  }
  std::vector<PointMatch> work;
  Standardization st;
  if (opts.standardize) {
    auto [sm, s] = standardize(matches);
    work = std::move(sm);
    st = s;
  } else {
    work = matches;
  }

  // Half-space cut <w, x> >= 0 through the linear estimate: the problem is
  // invariant under F -> -F, so without the cut the relaxation's optimal face
  // is the antipodal segment and the flat-rank test cannot certify. The cut
  // keeps exactly one representative of each +-pair and leaves the optimal
  // value unchanged.
  const la::Vector w = to_vec9(linear_f(work));
  poly::Polynomial cut(9);
  for (int i = 0; i < 9; ++i) {
    if (w[i] != 0.0) {
      poly::MultiIndex alpha(9, 0);
      alpha[i] = 1;
      cut.add_term(alpha, w[i]);
    }
  }

  lasserre::SemiAlgebraicProblem prob;
  prob.n = 9;
  prob.objective = cost_polynomial(work);
  prob.inequalities.push_back(std::move(cut));
  prob.equalities.push_back(det_polynomial());
  prob.equalities.push_back(unit_norm_polynomial());

  lasserre::RelaxationOptions ropts;
  ropts.sdp = opts.sdp;
  ropts.rank_tol = opts.rank_tol;
  lasserre::RelaxationResult res =
      lasserre::solve_relaxation(prob, opts.order, ropts);

  if (res.solver_status == sdp::SolveStatus::Infeasible ||
      res.solver_status == sdp::SolveStatus::NumericalFailure ||
      res.minimizers.empty()) {
    fail(ErrorCode::SolverFailure, "relaxation solve failed");
  }

  // Pick the candidate with the smallest objective (ties: first).
  const la::Vector* cand = &res.minimizers[0];
  double cand_cost = prob.objective.eval(*cand);
  for (const la::Vector& x : res.minimizers) {
    const double c = prob.objective.eval(x);
    if (c < cand_cost) {
      cand_cost = c;
      cand = &x;
    }
  }

  la::Vector polished = polish_on_manifold(*cand, work);
  la::Mat3 fhat = from_vec9(polished);

  la::Mat3 f = fhat;
  if (opts.standardize) {
    f = la::mul(la::transpose(st.t2), la::mul(fhat, st.t1));
  }
  normalize_sign_scale(f);

  FMatrix out;
  out.m = f;
  out.rank2_certified = std::fabs(la::det(f)) <= 1e-9;
  if (!out.rank2_certified) {
    FMatrix rep = project_rank2(f);
    out.m = rep.m;
    out.rank2_certified = true;
  }
  GlobalCertificate cert;
  cert.certified = res.certified;
  cert.order = res.order;
  cert.moment_rank =
      res.moment_matrix_ranks.empty() ? 0 : res.moment_matrix_ranks.back();
  cert.relax_bound = res.optimum;
  out.global_certificate = cert;
  return out;
}

}  // namespace fmb::epipolar
