// Two-view projective bundle adjustment. Unknowns are the 12 entries of P'
// and the 4n homogeneous point coordinates; P stays [I | 0]. Levenberg-
// Marquardt on the stacked reprojection residuals, with the point blocks
// eliminated through the Schur complement so each iteration is O(n).

#include <cmath>

#include "fmb/error.hpp"
#include "fmb/la/factor.hpp"
#include "fmb/multiview/multiview.hpp"

namespace fmb::multiview {

namespace {

struct PointJac {
  double r[4];        // residuals: image1 x,y then image2 x,y
  double jp[4][4];    // d residual / d Q
  double jc[2][12];   // rows 2,3 w.r.t. vec(P'); rows 0,1 are zero
};

// Residual and Jacobian of one point; returns false when a projection
// denominator vanishes.
bool point_residual(const la::Mat34& p, const la::Mat34& pp,
                    const la::Vec4& q, const PointMatch& m, PointJac* out,
                    bool with_jacobian) {
  const la::Vec3 h1 = la::mul(p, q);
  const la::Vec3 h2 = la::mul(pp, q);
  if (std::fabs(h1[2]) < 1e-300 || std::fabs(h2[2]) < 1e-300) return false;
  const double w1 = 1.0 / h1[2];
  const double w2 = 1.0 / h2[2];
  const double u1 = h1[0] * w1, v1 = h1[1] * w1;
  const double u2 = h2[0] * w2, v2 = h2[1] * w2;
  out->r[0] = u1 - m.q[0];
  out->r[1] = v1 - m.q[1];
  out->r[2] = u2 - m.qp[0];
  out->r[3] = v2 - m.qp[1];
  if (!with_jacobian) return true;
  for (int k = 0; k < 4; ++k) {
    out->jp[0][k] = (p(0, k) - u1 * p(2, k)) * w1;
    out->jp[1][k] = (p(1, k) - v1 * p(2, k)) * w1;
    out->jp[2][k] = (pp(0, k) - u2 * pp(2, k)) * w2;
    out->jp[3][k] = (pp(1, k) - v2 * pp(2, k)) * w2;
  }
  for (int c = 0; c < 12; ++c) out->jc[0][c] = out->jc[1][c] = 0.0;
  for (int k = 0; k < 4; ++k) {
    out->jc[0][0 + k] = q[k] * w2;                // d u2 / d P'(0,k)
    out->jc[0][8 + k] = -u2 * q[k] * w2;          // d u2 / d P'(2,k)
    out->jc[1][4 + k] = q[k] * w2;                // d v2 / d P'(1,k)
    out->jc[1][8 + k] = -v2 * q[k] * w2;          // d v2 / d P'(2,k)
  }
  return true;
}

double total_cost(const la::Mat34& p, const la::Mat34& pp,
                  const std::vector<la::Vec4>& pts,
                  const std::vector<PointMatch>& matches, bool* ok) {
  double cost = 0.0;
  PointJac pj;
  *ok = true;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    if (!point_residual(p, pp, pts[i], matches[i], &pj, false)) {
      *ok = false;
      return 0.0;
    }
    for (int k = 0; k < 4; ++k) cost += pj.r[k] * pj.r[k];
  }
  return cost;
}

}  // namespace

BundleResult bundle_adjust(const CameraPair& cams,
                           const std::vector<ScenePoint>& points,
                           const std::vector<PointMatch>& matches,
                           const BundleOptions& opts) {
  const std::size_t n = matches.size();
  if (points.size() != n) {
    fail(ErrorCode::DimensionMismatch, "points vs matches count");
  }

  la::Mat34 pp = cams.pp;
  std::vector<la::Vec4> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = points[i].q;

  std::vector<PointJac> jacs(n);
  auto build = [&](double* cost_out) -> bool {
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!point_residual(cams.p, pp, pts[i], matches[i], &jacs[i], true)) {
        return false;
      }
      for (int k = 0; k < 4; ++k) cost += jacs[i].r[k] * jacs[i].r[k];
    }
    *cost_out = cost;
    return true;
  };

  BundleResult res;
  double cost = 0.0;
  if (!build(&cost)) {
    fail(ErrorCode::PointAtInfinity, "initial reprojection not finite");
  }
  res.accepted_costs.push_back(cost);

  // Initial damping from the mean diagonal of J^T J.
  double diag_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 4; ++k)
      for (int c = 0; c < 4; ++c) diag_sum += jacs[i].jp[k][c] * jacs[i].jp[k][c];
    for (int k = 0; k < 2; ++k)
      for (int c = 0; c < 12; ++c) diag_sum += jacs[i].jc[k][c] * jacs[i].jc[k][c];
  }
  const double nparams = 12.0 + 4.0 * static_cast<double>(n);
  double lambda = opts.lambda_init_factor * diag_sum / nparams;
  if (!(lambda > 0.0)) lambda = opts.lambda_init_factor;

  int iters = 0;
  bool converged = false;

  while (iters < opts.max_iter && !converged) {
    ++iters;

    // Assemble the camera system with point blocks eliminated.
    la::Matrix a(12, 12);
    la::Vector gc(12, 0.0);
    for (int c = 0; c < 12; ++c) a(c, c) = lambda;
    std::vector<la::Matrix> cinv_bt(n);   // C_i^{-1} B_i^T (4x12)
    std::vector<la::Vector> cinv_gp(n);   // C_i^{-1} g_p,i
    bool solved = true;
    for (std::size_t i = 0; i < n; ++i) {
      const PointJac& pj = jacs[i];
      la::Matrix ci(4, 4);
      for (int r = 0; r < 4; ++r) {
        for (int c = r; c < 4; ++c) {
          double s = 0.0;
          for (int k = 0; k < 4; ++k) s += pj.jp[k][r] * pj.jp[k][c];
          ci(r, c) = s;
          ci(c, r) = s;
        }
        ci(r, r) += lambda;
      }
      la::Matrix bi(12, 4);  // B_i = Jc^T Jp (camera rows couple via k=2,3)
      for (int c = 0; c < 12; ++c) {
        for (int r = 0; r < 4; ++r) {
          bi(c, r) = pj.jc[0][c] * pj.jp[2][r] + pj.jc[1][c] * pj.jp[3][r];
        }
      }
      la::Vector gp(4, 0.0);
      for (int r = 0; r < 4; ++r) {
        for (int k = 0; k < 4; ++k) gp[r] += pj.jp[k][r] * pj.r[k];
      }
      for (int c = 0; c < 12; ++c) {
        gc[c] += pj.jc[0][c] * pj.r[2] + pj.jc[1][c] * pj.r[3];
      }
      la::Matrix lci = ci;
      if (!la::cholesky_in_place(lci)) {
        solved = false;
        break;
      }
      // C^{-1} B^T rows and C^{-1} g_p.
      la::Matrix bt(4, 12);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 12; ++c) bt(r, c) = bi(c, r);
      la::Matrix rhs_rows = la::transpose(bt);  // 12 rows of length 4
      la::solve_cholesky_multi(lci, rhs_rows);
      cinv_bt[i] = la::transpose(rhs_rows);     // 4x12: C^{-1} B^T
      cinv_gp[i] = gp;
      la::solve_cholesky(lci, cinv_gp[i]);
      // A += Jc^T Jc - B C^{-1} B^T
      for (int r = 0; r < 12; ++r) {
        for (int c = 0; c < 12; ++c) {
          double s = pj.jc[0][r] * pj.jc[0][c] + pj.jc[1][r] * pj.jc[1][c];
          for (int k = 0; k < 4; ++k) s -= bi(r, k) * cinv_bt[i](k, c);
          a(r, c) += s;
        }
      }
    }
    if (!solved) {
      res.diverged = true;
      break;
    }

    // rhs = -gc + sum_i B_i C_i^{-1} g_p,i
    la::Vector dc(12);
    for (int c = 0; c < 12; ++c) dc[c] = -gc[c];
    for (std::size_t i = 0; i < n; ++i) {
      const PointJac& pj = jacs[i];
      la::Vector bg(12, 0.0);
      // B_i (12x4) applied to C^{-1} g_p: rebuild B_i rows on the fly.
      for (int c = 0; c < 12; ++c) {
        double s = 0.0;
        for (int r = 0; r < 4; ++r) {
          s += (pj.jc[0][c] * pj.jp[2][r] + pj.jc[1][c] * pj.jp[3][r]) *
               cinv_gp[i][r];
        }
        bg[c] = s;
      }
      for (int c = 0; c < 12; ++c) dc[c] += bg[c];
    }
    la::symmetrize(a);
    la::Matrix al = a;
    if (!la::cholesky_in_place(al)) {
      res.diverged = true;
      break;
    }
    la::solve_cholesky(al, dc);

    // Back-substitute the point updates.
    std::vector<la::Vec4> dpts(n);
    double step_sq = 0.0;
    for (int c = 0; c < 12; ++c) step_sq += dc[c] * dc[c];
    for (std::size_t i = 0; i < n; ++i) {
      for (int r = 0; r < 4; ++r) {
        double s = cinv_gp[i][r];
        for (int c = 0; c < 12; ++c) s += cinv_bt[i](r, c) * dc[c];
        dpts[i][r] = -s;
        step_sq += s * s;
      }
    }
    const double step_norm = std::sqrt(step_sq);

    // Trial state.
    la::Mat34 pp_try = pp;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 4; ++c) pp_try(r, c) += dc[4 * r + c];
    std::vector<la::Vec4> pts_try(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (int r = 0; r < 4; ++r) pts_try[i][r] = pts[i][r] + dpts[i][r];
    }
    bool finite = true;
    const double cost_try = total_cost(cams.p, pp_try, pts_try, matches, &finite);

    if (finite && cost_try <= cost) {
      pp = pp_try;
      pts = std::move(pts_try);
      // Renormalize homogeneous points after an accepted step.
      for (std::size_t i = 0; i < n; ++i) {
        double nrm = 0.0;
        for (int r = 0; r < 4; ++r) nrm += pts[i][r] * pts[i][r];
        nrm = std::sqrt(nrm);
        if (nrm > 0.0) {
          for (int r = 0; r < 4; ++r) pts[i][r] /= nrm;
        }
      }
      const double improvement = cost - cost_try;
      cost = cost_try;
      res.accepted_costs.push_back(cost);
      lambda = std::max(lambda * 0.1, 1e-18);
      if (!build(&cost)) {
        res.diverged = true;
        break;
      }
      double gmax = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (int r = 0; r < 4; ++r) {
          double s = 0.0;
          for (int k = 0; k < 4; ++k) s += jacs[i].jp[k][r] * jacs[i].r[k];
          gmax = std::max(gmax, std::fabs(s));
        }
      }
      {
        la::Vector gcam(12, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
          for (int c = 0; c < 12; ++c) {
            gcam[c] +=
                jacs[i].jc[0][c] * jacs[i].r[2] + jacs[i].jc[1][c] * jacs[i].r[3];
          }
        }
        gmax = std::max(gmax, la::max_abs(gcam));
      }
      if (improvement <= opts.cost_rel_tol * std::max(cost, 1e-300) ||
          gmax < opts.gradient_tol || step_norm < opts.step_tol) {
        converged = true;
      }
    } else {
      lambda *= 10.0;
      if (lambda > opts.lambda_max) {
        res.diverged = true;
        break;
      }
    }
  }

  res.pp = pp;
  res.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.points[i].q = pts[i];
  res.iterations = (converged || res.diverged) ? iters : opts.max_iter + 1;
  res.e_final = std::sqrt(cost / (2.0 * static_cast<double>(n)));
  return res;
}

}  // namespace fmb::multiview
