// Infeasible-start primal-dual path-following solver for block-diagonal SDPs
// with free decision vector and linear equality constraints:
//
//     min  c.y   s.t.  Gy = h,   S_b(y) = sum_j y_j B_{b,j} - D_b  PSD.
//
// The search direction uses Nesterov-Todd scaling with a Mehrotra
// predictor-corrector step. With multipliers X_b (PSD, one per block) and v
// (equalities), the KKT system is
//
//     Gy = h,  S = B(y) - D,            (y-side feasibility)
//     A(X) + G^T v = c,                 (multiplier stationarity)
//     X_b S_b = 0,                      (complementarity)
//
// where A(X)_j = sum_b <B_{b,j}, X_b> and B(y) = sum_j y_j B_j. Eliminating
// dX and dS from the Newton equations leaves the bordered system
//
//     [ Omega  -G^T ] [dy]   [rhs_y]        Omega_jk = sum_b <B_j, W B_k W>
//     [   G     0   ] [dv] = [r_eq ]
//
// with W the NT scaling point per block, solved by Cholesky plus a dense
// Schur complement on the equality border, with iterative refinement.
//
// Cost and right-hand-side data are scaled to unit magnitude internally;
// all reported metrics (objective, gap, residuals) refer to the problem as
// posed, so the termination tolerances are meaningful to the caller.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "fmb/la/factor.hpp"
#include "fmb/sdp/solver.hpp"
#include "fmb/simd/kernels.hpp"

namespace fmb::sdp {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::SlowProgress: return "SlowProgress";
    case SolveStatus::MaxIter: return "MaxIter";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::NumericalFailure: return "NumericalFailure";
  }
  return "?";
}

namespace {

using la::Matrix;
using la::Vector;

struct BlockWork {
  const Block* spec = nullptr;
  int dim = 0;
  Matrix x, s;          // multiplier X_b and slack S_b iterates (scaled data)
  Matrix r, w;          // NT factor R (W = R R^T)
  Vector lambda;        // scaled spectrum
  Matrix r_lmi;         // D + S - B(y)
  Matrix rc;            // scaled complementarity right-hand side
  Matrix dx, ds;        // directions
  Matrix dxs, dss;      // scaled affine directions (corrector term)
  Matrix dconst;        // dense D_b
};

double sparse_inner(const std::vector<BlockEntry>& entries, const Matrix& m) {
  double s = 0.0;
  for (const BlockEntry& e : entries) {
    s += e.value * (e.row == e.col ? m(e.row, e.col) : 2.0 * m(e.row, e.col));
  }
  return s;
}

void sparse_accum(const std::vector<BlockEntry>& entries, double coeff,
                  Matrix& out) {
  for (const BlockEntry& e : entries) {
    out(e.row, e.col) += coeff * e.value;
    if (e.row != e.col) out(e.col, e.row) += coeff * e.value;
  }
}

// Largest step alpha keeping m + alpha*d PSD.
double step_to_boundary(const Matrix& m, const Matrix& d) {
  const std::size_t n = m.rows();
  if (n == 1) {
    if (d(0, 0) >= 0.0) return std::numeric_limits<double>::infinity();
    return -m(0, 0) / d(0, 0);
  }
  Matrix l = m;
  if (!la::cholesky_in_place(l)) return 0.0;
  Matrix t = d;
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 0; i < n; ++i) {
      double v = t(i, col);
      for (std::size_t k = 0; k < i; ++k) v -= l(i, k) * t(k, col);
      t(i, col) = v / l(i, i);
    }
  }
  Matrix k = la::transpose(t);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 0; i < n; ++i) {
      double v = k(i, col);
      for (std::size_t kk = 0; kk < i; ++kk) v -= l(i, kk) * k(kk, col);
      k(i, col) = v / l(i, i);
    }
  }
  la::symmetrize(k);
  la::SymEig eig = la::sym_eig(k);
  const double lam_min = eig.values.back();
  if (lam_min >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lam_min;
}

struct Iterate {
  Vector y, v;
  std::vector<Matrix> x, s;
  double merit = std::numeric_limits<double>::infinity();
  double gap = 0.0, pinf = 0.0, dinf = 0.0;
  double pobj = 0.0, dobj = 0.0;
  int at_iter = 0;
};

}  // namespace

SdpSolution solve_sdp(const SdpProblem& prob, const SolverOptions& opts) {
  const int m = prob.num_vars;
  const std::size_t p = prob.equalities.size();
  const std::size_t nb = prob.blocks.size();

  SdpSolution sol;
  sol.status = SolveStatus::NumericalFailure;

  // --- data scaling factors (applied to internal copies only)
  double dmax_ext = 0.0;
  for (const Block& b : prob.blocks) {
    for (const BlockEntry& e : b.constant) dmax_ext = std::max(dmax_ext, std::fabs(e.value));
  }
  double hmax_ext = 0.0;
  for (const EqRow& r : prob.equalities) hmax_ext = std::max(hmax_ext, std::fabs(r.rhs));
  const double sc = std::max(1.0, la::max_abs(prob.cost));
  const double sb = std::max({1.0, hmax_ext, dmax_ext});
  Vector cost(m);
  for (int j = 0; j < m; ++j) cost[j] = prob.cost[j] / sc;

  // --- presolve: drop linearly dependent equality rows (modified
  // Gram-Schmidt on the rows of G).
  std::vector<std::size_t> eq_keep;
  {
    std::vector<Vector> basis;
    for (std::size_t r = 0; r < p; ++r) {
      Vector row(m, 0.0);
      for (const auto& [j, cval] : prob.equalities[r].coeffs) row[j] = cval;
      const double nrm0 = la::norm2(row);
      if (nrm0 == 0.0) continue;
      Vector work = row;
      for (const Vector& b : basis) {
        const double proj = la::dot(work, b);
        simd::axpy(-proj, b.data(), work.data(), work.size());
      }
      const double nrm = la::norm2(work);
      if (nrm <= 1e-10 * nrm0) continue;  // redundant row
      simd::scale(1.0 / nrm, work.data(), work.size());
      basis.push_back(std::move(work));
      eq_keep.push_back(r);
    }
  }
  const std::size_t pe = eq_keep.size();
  Matrix g(pe, static_cast<std::size_t>(m));
  Vector h(pe, 0.0);
  for (std::size_t r = 0; r < pe; ++r) {
    const EqRow& row = prob.equalities[eq_keep[r]];
    for (const auto& [j, cval] : row.coeffs) g(r, j) = cval;
    h[r] = row.rhs / sb;
  }

  // --- workspace
  std::vector<BlockWork> bw(nb);
  int nu = 0;
  for (std::size_t b = 0; b < nb; ++b) {
    bw[b].spec = &prob.blocks[b];
    bw[b].dim = prob.blocks[b].dim;
    nu += bw[b].dim;
    const std::size_t d = bw[b].dim;
    bw[b].x = Matrix(d, d);
    bw[b].s = Matrix(d, d);
    bw[b].r_lmi = Matrix(d, d);
    bw[b].rc = Matrix(d, d);
    bw[b].dconst = Matrix(d, d);
    for (const BlockEntry& e : prob.blocks[b].constant) {
      bw[b].dconst(e.row, e.col) += e.value / sb;
      if (e.row != e.col) bw[b].dconst(e.col, e.row) += e.value / sb;
    }
  }
  const double cmax_i = la::max_abs(cost);
  const double hmax_i = la::max_abs(h);
  const double eta = std::max({hmax_i, cmax_i, 1.0});

  Vector y(m, 0.0), v(pe, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    for (int i = 0; i < bw[b].dim; ++i) {
      bw[b].x(i, i) = eta;
      bw[b].s(i, i) = eta;
    }
  }

  const double denom_p = 1.0 + sb * std::max(hmax_i, dmax_ext / sb);
  const double denom_d = 1.0 + sc * cmax_i;

  Iterate best;
  double cur_gap = 0.0, cur_pinf = 0.0, cur_dinf = 0.0;
  double cur_pobj = 0.0, cur_dobj = 0.0;
  auto record = [&](double merit, double gap, double pinf, double dinf,
                    double pobj, double dobj, int iter) {
    if (merit < best.merit) {
      best.merit = merit;
      best.gap = gap;
      best.pinf = pinf;
      best.dinf = dinf;
      best.pobj = pobj;
      best.dobj = dobj;
      best.at_iter = iter;
      best.y = y;
      best.v = v;
      best.x.clear();
      best.s.clear();
      for (std::size_t b = 0; b < nb; ++b) {
        best.x.push_back(bw[b].x);
        best.s.push_back(bw[b].s);
      }
    }
  };

  auto finish = [&](SolveStatus status, bool use_best, int iters) {
    // A stalled run whose best iterate still meets the tolerances counts as
    // solved.
    if (use_best && status != SolveStatus::Infeasible && !best.y.empty() &&
        best.gap <= opts.gap_tol && best.pinf <= opts.feas_tol &&
        best.dinf <= opts.feas_tol) {
      status = SolveStatus::Optimal;
    }
    sol.status = status;
    sol.iterations = iters;
    const bool from_best = use_best && !best.y.empty();
    const Vector& ry = from_best ? best.y : y;
    const Vector& rv = from_best ? best.v : v;
    sol.y.resize(m);
    for (int j = 0; j < m; ++j) sol.y[j] = sb * ry[j];
    sol.eq_multipliers.assign(p, 0.0);
    for (std::size_t r = 0; r < pe; ++r)
      sol.eq_multipliers[eq_keep[r]] = sc * rv[r];
    sol.block_values.clear();
    sol.block_multipliers.clear();
    for (std::size_t b = 0; b < nb; ++b) {
      Matrix s_out = from_best ? best.s[b] : bw[b].s;
      Matrix x_out = from_best ? best.x[b] : bw[b].x;
      for (std::size_t i = 0; i < s_out.rows(); ++i) {
        for (std::size_t j = 0; j < s_out.cols(); ++j) {
          s_out(i, j) *= sb;
          x_out(i, j) *= sc;
        }
      }
      sol.block_values.push_back(std::move(s_out));
      sol.block_multipliers.push_back(std::move(x_out));
    }
    sol.objective = from_best ? best.pobj : cur_pobj;
    sol.dual_objective = from_best ? best.dobj : cur_dobj;
    sol.gap = from_best ? best.gap : cur_gap;
    sol.primal_residual = from_best ? best.pinf : cur_pinf;
    sol.dual_residual = from_best ? best.dinf : cur_dinf;
    return sol;
  };

  Vector r_mult(m, 0.0), r_eq(pe, 0.0);
  double prev_merit = std::numeric_limits<double>::infinity();
  double prev_inf = std::numeric_limits<double>::infinity();
  int slow_count = 0, diverge_count = 0;

  for (int iter = 0; iter <= opts.max_iter; ++iter) {
    // ---- residuals (internal scaling)
    for (int j = 0; j < m; ++j) r_mult[j] = cost[j];
    for (std::size_t b = 0; b < nb; ++b) {
      for (const auto& [j, entries] : bw[b].spec->terms) {
        r_mult[j] -= sparse_inner(entries, bw[b].x);
      }
    }
    for (std::size_t r = 0; r < pe; ++r) {
      if (v[r] != 0.0) simd::axpy(-v[r], g.row(r), r_mult.data(), m);
    }
    for (std::size_t r = 0; r < pe; ++r)
      r_eq[r] = h[r] - simd::dot(g.row(r), y.data(), m);
    double lmi_inf = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      Matrix& rl = bw[b].r_lmi;
      rl = bw[b].dconst;
      la::add_scaled(rl, 1.0, bw[b].s);
      for (const auto& [j, entries] : bw[b].spec->terms) {
        if (y[j] != 0.0) sparse_accum(entries, -y[j], rl);
      }
      lmi_inf = std::max(lmi_inf, la::max_abs(rl));
    }

    // External-problem objective values and relative metrics.
    const double pobj = sc * sb * la::dot(cost, y);
    double dobj_i = la::dot(h, v);
    for (std::size_t b = 0; b < nb; ++b) {
      for (int i = 0; i < bw[b].dim; ++i)
        dobj_i += simd::dot(bw[b].dconst.row(i), bw[b].x.row(i), bw[b].dim);
    }
    const double dobj = sc * sb * dobj_i;
    const double gap =
        std::fabs(pobj - dobj) / (1.0 + 0.5 * (std::fabs(pobj) + std::fabs(dobj)));
    const double pinf =
        sb * std::max(la::max_abs(r_eq), lmi_inf) / denom_p;
    const double dinf = sc * la::max_abs(r_mult) / denom_d;
    const double merit = gap + pinf + dinf;
    cur_gap = gap;
    cur_pinf = pinf;
    cur_dinf = dinf;
    cur_pobj = pobj;
    cur_dobj = dobj;
    record(merit, gap, pinf, dinf, pobj, dobj, iter);
    if (opts.verbose) {
      std::fprintf(stderr,
                   "sdp it %3d  pobj % .9e  dobj % .9e  gap %.2e  pinf %.2e  "
                   "dinf %.2e\n",
                   iter, pobj, dobj, gap, pinf, dinf);
    }

    if (gap <= opts.gap_tol && pinf <= opts.feas_tol && dinf <= opts.feas_tol) {
      return finish(SolveStatus::Optimal, false, iter);
    }
    if (iter == opts.max_iter) {
      return finish(SolveStatus::MaxIter, true, iter);
    }
    if (iter > 0) {
      slow_count = (merit > (1.0 - opts.slow_rel) * prev_merit) ? slow_count + 1 : 0;
      diverge_count = (pinf + dinf > prev_inf * 1.01 + 1e-14) ? diverge_count + 1 : 0;
      if (slow_count >= opts.slow_window) {
        return finish(SolveStatus::SlowProgress, true, iter);
      }
      if (diverge_count >= opts.diverge_window) {
        return finish(SolveStatus::Infeasible, true, iter);
      }
    }
    prev_merit = merit;
    prev_inf = pinf + dinf;

    // ---- Nesterov-Todd scaling per block
    double mu = 0.0;
    bool scaling_ok = true;
    for (std::size_t b = 0; b < nb; ++b) {
      const std::size_t d = bw[b].dim;
      Matrix lx = bw[b].x;
      Matrix ls = bw[b].s;
      if (!la::cholesky_in_place(lx) || !la::cholesky_in_place(ls)) {
        scaling_ok = false;
        break;
      }
      Matrix prod = la::multiply_tn(ls, lx);  // Ls^T Lx
      la::Svd sv = la::svd(prod);
      bw[b].lambda = sv.sigma;
      Matrix r = la::multiply(lx, sv.v);
      for (std::size_t j = 0; j < d; ++j) {
        if (sv.sigma[j] <= 0.0) {
          scaling_ok = false;
          break;
        }
        const double isq = 1.0 / std::sqrt(sv.sigma[j]);
        for (std::size_t i = 0; i < d; ++i) r(i, j) *= isq;
      }
      if (!scaling_ok) break;
      bw[b].r = r;
      bw[b].w = la::multiply_nt(r, r);
      la::symmetrize(bw[b].w);
      for (std::size_t i = 0; i < d; ++i) mu += sv.sigma[i] * sv.sigma[i];
    }
    if (!scaling_ok) {
      return finish(SolveStatus::NumericalFailure, true, iter);
    }
    mu /= nu;

    // ---- Schur matrix Omega and factorizations
    Matrix omega(static_cast<std::size_t>(m), static_cast<std::size_t>(m), 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
      const std::size_t d = bw[b].dim;
      const Matrix& w = bw[b].w;
      Matrix vk(d, d);
      const auto& terms = bw[b].spec->terms;
      for (std::size_t tk = 0; tk < terms.size(); ++tk) {
        const int k = terms[tk].first;
        vk.fill(0.0);
        for (const BlockEntry& e : terms[tk].second) {
          const double* wr = w.row(e.row);
          const double* wc = w.row(e.col);
          if (e.row == e.col) {
            for (std::size_t i = 0; i < d; ++i) {
              simd::axpy(e.value * wr[i], wc, vk.row(i), d);
            }
          } else {
            for (std::size_t i = 0; i < d; ++i) {
              simd::axpy2(e.value * wr[i], wc, e.value * wc[i], wr, vk.row(i), d);
            }
          }
        }
        for (std::size_t tj = 0; tj <= tk; ++tj) {
          const int j = terms[tj].first;
          const double val = sparse_inner(terms[tj].second, vk);
          omega(j, k) += val;
          if (j != k) omega(k, j) += val;
        }
      }
    }
    double diag_max = 0.0;
    for (int j = 0; j < m; ++j) diag_max = std::max(diag_max, omega(j, j));
    Matrix omega_l = omega;
    if (la::cholesky_regularized(omega_l, 1e-14 * std::max(diag_max, 1.0)) < 0.0) {
      return finish(SolveStatus::NumericalFailure, true, iter);
    }

    Matrix z = g;  // rows become Omega^{-1} g_r
    la::solve_cholesky_multi(omega_l, z);
    Matrix schur_l(pe, pe);
    for (std::size_t a = 0; a < pe; ++a) {
      for (std::size_t bcol = 0; bcol <= a; ++bcol) {
        const double val = simd::dot(g.row(a), z.row(bcol), m);
        schur_l(a, bcol) = val;
        schur_l(bcol, a) = val;
      }
    }
    if (pe > 0) {
      double spd = 0.0;
      for (std::size_t a = 0; a < pe; ++a) spd = std::max(spd, schur_l(a, a));
      if (la::cholesky_regularized(schur_l, 1e-14 * std::max(spd, 1.0)) < 0.0) {
        return finish(SolveStatus::NumericalFailure, true, iter);
      }
    }

    // Bordered solve with one round of iterative refinement.
    auto solve_bordered = [&](const Vector& rhs_y, const Vector& rhs_eq,
                              Vector& dy, Vector& dv) {
      auto one_pass = [&](const Vector& ry, const Vector& re, Vector& oy,
                          Vector& ov) {
        Vector u = ry;
        la::solve_cholesky(omega_l, u);
        if (pe > 0) {
          for (std::size_t r = 0; r < pe; ++r)
            ov[r] = re[r] - simd::dot(g.row(r), u.data(), m);
          la::solve_cholesky(schur_l, ov);
          oy = u;
          for (std::size_t r = 0; r < pe; ++r) {
            if (ov[r] != 0.0) simd::axpy(ov[r], z.row(r), oy.data(), m);
          }
        } else {
          oy = u;
        }
      };
      dy.assign(m, 0.0);
      dv.assign(pe, 0.0);
      one_pass(rhs_y, rhs_eq, dy, dv);
      // Refinement against the exact Omega/G blocks.
      Vector res_y = rhs_y;
      Vector tmp = la::multiply(omega, dy);
      for (int j = 0; j < m; ++j) res_y[j] -= tmp[j];
      for (std::size_t r = 0; r < pe; ++r) {
        if (dv[r] != 0.0) simd::axpy(dv[r], g.row(r), res_y.data(), m);
      }
      Vector res_eq(pe, 0.0);
      for (std::size_t r = 0; r < pe; ++r)
        res_eq[r] = rhs_eq[r] - simd::dot(g.row(r), dy.data(), m);
      Vector cy(m, 0.0), cv(pe, 0.0);
      one_pass(res_y, res_eq, cy, cv);
      for (int j = 0; j < m; ++j) dy[j] += cy[j];
      for (std::size_t r = 0; r < pe; ++r) dv[r] += cv[r];
    };

    Vector rhs_fixed(m, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
      Matrix tmp = la::multiply(bw[b].w, bw[b].r_lmi);
      Matrix wrw = la::multiply(tmp, bw[b].w);
      la::symmetrize(wrw);
      for (const auto& [j, entries] : bw[b].spec->terms) {
        rhs_fixed[j] += sparse_inner(entries, wrw);
      }
    }
    for (int j = 0; j < m; ++j) rhs_fixed[j] -= r_mult[j];

    Vector dy(m, 0.0), dv(pe, 0.0);
    auto solve_direction = [&]() {
      Vector rhs_y = rhs_fixed;
      for (std::size_t b = 0; b < nb; ++b) {
        Matrix tmp = la::multiply(bw[b].r, bw[b].rc);
        Matrix rrr = la::multiply_nt(tmp, bw[b].r);
        la::symmetrize(rrr);
        for (const auto& [j, entries] : bw[b].spec->terms) {
          rhs_y[j] += sparse_inner(entries, rrr);
        }
      }
      solve_bordered(rhs_y, r_eq, dy, dv);
      for (std::size_t b = 0; b < nb; ++b) {
        const std::size_t d = bw[b].dim;
        Matrix& ds = bw[b].ds;
        ds = Matrix(d, d);
        for (const auto& [j, entries] : bw[b].spec->terms) {
          if (dy[j] != 0.0) sparse_accum(entries, dy[j], ds);
        }
        la::add_scaled(ds, -1.0, bw[b].r_lmi);
        la::symmetrize(ds);
        // dX in the scaled frame: dXs = Rc - R^T dS R. Mapping out through R
        // afterwards preserves the cancellation between the two terms, which
        // matters once the scaling point is ill-conditioned near convergence.
        Matrix tmp = la::multiply_tn(bw[b].r, ds);
        Matrix dss = la::multiply(tmp, bw[b].r);
        Matrix dxs = bw[b].rc;
        la::add_scaled(dxs, -1.0, dss);
        Matrix rdx = la::multiply(bw[b].r, dxs);
        Matrix dx = la::multiply_nt(rdx, bw[b].r);
        la::symmetrize(dx);
        bw[b].dx = dx;
        bw[b].dss = std::move(dss);
        bw[b].dxs = std::move(dxs);
      }
    };

    // ---- predictor (affine direction): Rc = -Lambda
    for (std::size_t b = 0; b < nb; ++b) {
      bw[b].rc.fill(0.0);
      for (int i = 0; i < bw[b].dim; ++i) bw[b].rc(i, i) = -bw[b].lambda[i];
    }
    solve_direction();

    double ap = 1.0, ad = 1.0;
    for (std::size_t b = 0; b < nb; ++b) {
      ap = std::min(ap, opts.step_fraction * step_to_boundary(bw[b].x, bw[b].dx));
      ad = std::min(ad, opts.step_fraction * step_to_boundary(bw[b].s, bw[b].ds));
    }
    ap = std::min(ap, 1.0);
    ad = std::min(ad, 1.0);

    double mu_aff = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      const std::size_t d = bw[b].dim;
      Matrix xa = bw[b].x;
      la::add_scaled(xa, ap, bw[b].dx);
      Matrix sa = bw[b].s;
      la::add_scaled(sa, ad, bw[b].ds);
      for (std::size_t i = 0; i < d; ++i)
        mu_aff += simd::dot(xa.row(i), sa.row(i), d);
    }
    mu_aff = std::max(mu_aff / nu, 0.0);
    double sigma = std::pow(mu_aff / mu, 3);
    sigma = std::min(1.0, std::max(0.0, sigma));

    // ---- corrector (dxs/dss hold the scaled affine direction)
    for (std::size_t b = 0; b < nb; ++b) {
      const std::size_t d = bw[b].dim;
      Matrix corr = la::multiply(bw[b].dxs, bw[b].dss);
      Matrix corr2 = la::multiply(bw[b].dss, bw[b].dxs);
      la::add_scaled(corr, 1.0, corr2);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          double num = -0.5 * corr(i, j);
          if (i == j) num += sigma * mu - bw[b].lambda[i] * bw[b].lambda[i];
          bw[b].rc(i, j) = 2.0 * num / (bw[b].lambda[i] + bw[b].lambda[j]);
        }
      }
      la::symmetrize(bw[b].rc);
    }
    solve_direction();

    if (opts.verbose) {
      // Direction quality: violation of A(dX) + G^T dv = r_mult.
      Vector viol = r_mult;
      for (std::size_t b = 0; b < nb; ++b) {
        for (const auto& [j, entries] : bw[b].spec->terms) {
          viol[j] -= sparse_inner(entries, bw[b].dx);
        }
      }
      for (std::size_t r = 0; r < pe; ++r) {
        if (dv[r] != 0.0) simd::axpy(-dv[r], g.row(r), viol.data(), m);
      }
      std::fprintf(stderr, "    corr dir: stat viol %.2e, |dy| %.2e\n",
                   la::max_abs(viol), la::max_abs(dy));
    }

    ap = 1.0;
    ad = 1.0;
    for (std::size_t b = 0; b < nb; ++b) {
      ap = std::min(ap, opts.step_fraction * step_to_boundary(bw[b].x, bw[b].dx));
      ad = std::min(ad, opts.step_fraction * step_to_boundary(bw[b].s, bw[b].ds));
    }
    if (!std::isfinite(ap)) ap = 1.0;
    if (!std::isfinite(ad)) ad = 1.0;
    if (!(ap > 0.0) || !(ad > 0.0)) {
      return finish(SolveStatus::NumericalFailure, true, iter);
    }
    ap = std::min(ap, 1.0);
    ad = std::min(ad, 1.0);

    // ---- update: X, v step with ap; y, S step with ad.
    for (std::size_t b = 0; b < nb; ++b) {
      la::add_scaled(bw[b].x, ap, bw[b].dx);
      la::add_scaled(bw[b].s, ad, bw[b].ds);
    }
    simd::axpy(ad, dy.data(), y.data(), m);
    if (pe > 0) simd::axpy(ap, dv.data(), v.data(), pe);
  }

  return finish(SolveStatus::MaxIter, true, opts.max_iter);
}

}  // namespace fmb::sdp
