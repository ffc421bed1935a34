#include "fmb/lasserre/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fmb/error.hpp"
#include "fmb/la/factor.hpp"

namespace fmb::lasserre {

using poly::cached_basis;
using poly::MomentVector;
using poly::MonomialBasis;
using poly::MultiIndex;
using poly::Polynomial;

int min_order(const SemiAlgebraicProblem& prob) {
  int d = std::max(1, prob.objective.half_degree());
  for (const Polynomial& g : prob.inequalities) d = std::max(d, g.half_degree());
  for (const Polynomial& h : prob.equalities) d = std::max(d, h.half_degree());
  return d;
}

sdp::SdpProblem build_relaxation(const SemiAlgebraicProblem& prob, int t) {
  if (t < min_order(prob)) {
    fail(ErrorCode::InvalidArgument, "relaxation order below minimum");
  }
  const int n = prob.n;
  const MonomialBasis& full = cached_basis(n, 2 * t);
  const MonomialBasis& rows = cached_basis(n, t);

  sdp::SdpProblem out;
  out.num_vars = static_cast<int>(full.size());
  out.cost.assign(full.size(), 0.0);
  for (const auto& [alpha, c] : prob.objective.terms()) {
    out.cost[full.index_of(alpha)] += c;
  }

  // y_0 = 1
  {
    sdp::EqRow row;
    row.coeffs.emplace_back(0, 1.0);
    row.rhs = 1.0;
    out.equalities.push_back(std::move(row));
  }
  // Equality constraints: L_y(x^alpha h) = 0 for all |alpha| <= 2t - deg h.
  for (const Polynomial& hk : prob.equalities) {
    const int max_shift = 2 * t - hk.degree();
    const MonomialBasis& shifts = cached_basis(n, max_shift);
    for (std::size_t a = 0; a < shifts.size(); ++a) {
      std::map<int, double> coeffs;
      for (const auto& [gamma, c] : hk.terms()) {
        coeffs[static_cast<int>(full.index_of(poly::add(shifts.at(a), gamma)))] += c;
      }
      sdp::EqRow row;
      for (const auto& [j, c] : coeffs) {
        if (c != 0.0) row.coeffs.emplace_back(j, c);
      }
      row.rhs = 0.0;
      out.equalities.push_back(std::move(row));
    }
  }

  auto flatten = [](std::map<int, std::vector<sdp::BlockEntry>>& collect,
                    sdp::Block& block) {
    block.terms.reserve(collect.size());
    for (auto& [var, entries] : collect) {
      block.terms.emplace_back(var, std::move(entries));
    }
  };

  // Moment matrix block M_t(y).
  {
    sdp::Block block;
    block.dim = static_cast<int>(rows.size());
    std::map<int, std::vector<sdp::BlockEntry>> collect;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = i; j < rows.size(); ++j) {
        const int var =
            static_cast<int>(full.index_of(poly::add(rows.at(i), rows.at(j))));
        collect[var].push_back({static_cast<int>(i), static_cast<int>(j), 1.0});
      }
    }
    flatten(collect, block);
    out.blocks.push_back(std::move(block));
  }

  // Localizing blocks M_{t-d_g}(g y).
  for (const Polynomial& gj : prob.inequalities) {
    const int tl = t - gj.half_degree();
    const MonomialBasis& lrows = cached_basis(n, tl);
    sdp::Block block;
    block.dim = static_cast<int>(lrows.size());
    std::map<int, std::vector<sdp::BlockEntry>> collect;
    for (std::size_t i = 0; i < lrows.size(); ++i) {
      for (std::size_t j = i; j < lrows.size(); ++j) {
        const MultiIndex ab = poly::add(lrows.at(i), lrows.at(j));
        for (const auto& [gamma, c] : gj.terms()) {
          const int var = static_cast<int>(full.index_of(poly::add(ab, gamma)));
          collect[var].push_back({static_cast<int>(i), static_cast<int>(j), c});
        }
      }
    }
    flatten(collect, block);
    out.blocks.push_back(std::move(block));
  }
  return out;
}

int numerical_rank(const la::Matrix& m, double rank_tol) {
  la::Vector sigma = la::singular_values_sym(m);
  if (sigma.empty()) return 0;
  const double thresh = rank_tol * std::max(sigma[0], 1.0);
  int r = 0;
  for (double s : sigma) {
    if (s > thresh) ++r;
  }
  return r;
}

std::pair<std::vector<int>, bool> check_certificate(const MomentVector& y,
                                                    int t, int d_k,
                                                    double rank_tol) {
  std::vector<int> ranks(t + 1, 0);
  for (int s = 0; s <= t; ++s) {
    ranks[s] = numerical_rank(poly::moment_matrix(y, s), rank_tol);
  }
  const int low = std::max(t - d_k, 0);
  const bool certified = (ranks[t] == 1) || (ranks[t] == ranks[low]);
  return {ranks, certified};
}

namespace {

// Deterministic pseudo-random weights for the simultaneous-diagonalization
// combination (fixed stream so solves are reproducible).
double unit_draw(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z = z ^ (z >> 31);
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<la::Vector> extract_minimizers(const MomentVector& y, int t, int r) {
  const int n = y.n;
  const MonomialBasis& rows = cached_basis(n, t);

  if (r <= 0) fail(ErrorCode::ExtractionFailed, "certificate rank not positive");
  if (r == 1) {
    la::Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = y.values[1 + i];
    return {x};
  }

  la::Matrix mt = poly::moment_matrix(y, t);
  la::SymEig eig = la::sym_eig(mt);
  if (eig.values[r - 1] <= 0.0) {
    fail(ErrorCode::ExtractionFailed, "moment matrix rank deficit");
  }
  const std::size_t s = rows.size();
  // Rank-revealing factor V (s x r) with M ~= V V^T.
  la::Matrix vfac(s, static_cast<std::size_t>(r));
  for (int c = 0; c < r; ++c) {
    const double w = std::sqrt(eig.values[c]);
    for (std::size_t i = 0; i < s; ++i) vfac(i, c) = w * eig.vectors(i, c);
  }

  // Column reduction (Gauss-Jordan) choosing low-degree pivot monomials.
  std::vector<int> pivot(r, -1);
  std::vector<bool> used(s, false);
  for (int c = 0; c < r; ++c) {
    double colmax = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      if (!used[i]) colmax = std::max(colmax, std::fabs(vfac(i, c)));
    }
    if (colmax <= 1e-12) {
      fail(ErrorCode::ExtractionFailed, "degenerate basis column");
    }
    int p = -1;
    for (std::size_t i = 0; i < s; ++i) {
      if (!used[i] && std::fabs(vfac(i, c)) >= 0.5 * colmax) {
        p = static_cast<int>(i);
        break;
      }
    }
    pivot[c] = p;
    used[p] = true;
    const double inv = 1.0 / vfac(p, c);
    for (std::size_t i = 0; i < s; ++i) vfac(i, c) *= inv;
    for (int c2 = 0; c2 < r; ++c2) {
      if (c2 == c) continue;
      const double f = vfac(p, c2);
      if (f != 0.0) {
        for (std::size_t i = 0; i < s; ++i) vfac(i, c2) -= f * vfac(i, c);
      }
    }
  }

  // Multiplication matrices N_i: row c = coordinates of x_i * beta_c in the
  // pivot-monomial basis.
  std::vector<la::Matrix> mult(n, la::Matrix(r, r));
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < r; ++c) {
      MultiIndex shifted = rows.at(pivot[c]);
      shifted[i] += 1;
      if (poly::degree(shifted) > t) {
        fail(ErrorCode::ExtractionFailed, "shifted basis monomial out of range");
      }
      const std::size_t row = rows.index_of(shifted);
      for (int c2 = 0; c2 < r; ++c2) mult[i](c, c2) = vfac(row, c2);
    }
  }

  // Random convex combination, then ordered real Schur.
  std::uint64_t state = 0x00C0FFEE5EEDULL;
  la::Vector w(n);
  double wsum = 0.0;
  for (int i = 0; i < n; ++i) {
    w[i] = 0.1 + unit_draw(state);
    wsum += w[i];
  }
  la::Matrix comb(r, r);
  for (int i = 0; i < n; ++i) la::add_scaled(comb, w[i] / wsum, mult[i]);

  la::RealSchur sch = la::real_schur(comb, true);
  if (!sch.converged) {
    fail(ErrorCode::ExtractionFailed, "Schur iteration stalled");
  }
  for (int i = 0; i + 1 < r; ++i) {
    if (sch.t(i + 1, i) != 0.0) {
      fail(ErrorCode::ExtractionFailed, "complex cluster in multiplication matrix");
    }
  }

  std::vector<la::Vector> out;
  la::Vector q(r), nq(r);
  for (int k = 0; k < r; ++k) {
    for (int i = 0; i < r; ++i) q[i] = sch.z(i, k);
    la::Vector x(n);
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < r; ++a) {
        nq[a] = 0.0;
        for (int b = 0; b < r; ++b) nq[a] += mult[i](a, b) * q[b];
      }
      double v = 0.0;
      for (int a = 0; a < r; ++a) v += q[a] * nq[a];
      x[i] = v;
    }
    out.push_back(std::move(x));
  }
  return out;
}

RelaxationResult solve_relaxation(const SemiAlgebraicProblem& prob, int t,
                                  const RelaxationOptions& opts) {
  RelaxationResult res;
  res.order = t;

  sdp::SdpProblem sp = build_relaxation(prob, t);
  sdp::SdpSolution sol = sdp::solve_sdp(sp, opts.sdp);

  res.solver_status = sol.status;
  res.sdp_gap = sol.gap;
  res.sdp_primal_residual = sol.primal_residual;
  res.sdp_dual_residual = sol.dual_residual;
  res.sdp_iterations = sol.iterations;

  res.moments.n = prob.n;
  res.moments.order = 2 * t;
  res.moments.values = sol.y;
  res.optimum = sol.objective;

  if (sol.status == sdp::SolveStatus::Infeasible ||
      sol.status == sdp::SolveStatus::NumericalFailure || sol.y.empty()) {
    return res;
  }

  auto [ranks, certified] =
      check_certificate(res.moments, t, min_order(prob), opts.rank_tol);
  res.moment_matrix_ranks = ranks;
  res.certified = certified;

  auto first_order_candidate = [&]() {
    la::Vector x(prob.n);
    for (int i = 0; i < prob.n; ++i) x[i] = res.moments.values[1 + i];
    return x;
  };

  if (res.certified) {
    try {
      std::vector<la::Vector> pts =
          extract_minimizers(res.moments, t, ranks[t]);
      for (const la::Vector& x : pts) {
        for (const Polynomial& hk : prob.equalities) {
          if (std::fabs(hk.eval(x)) > opts.feas_tol) {
            fail(ErrorCode::ExtractionFailed, "equality violated at atom");
          }
        }
        for (const Polynomial& gj : prob.inequalities) {
          if (gj.eval(x) < -opts.feas_tol) {
            fail(ErrorCode::ExtractionFailed, "inequality violated at atom");
          }
        }
        if (std::fabs(prob.objective.eval(x) - res.optimum) >
            opts.obj_tol * (1.0 + std::fabs(res.optimum))) {
          fail(ErrorCode::ExtractionFailed, "objective mismatch at atom");
        }
      }
      res.minimizers = std::move(pts);
    } catch (const Error&) {
      res.certified = false;
      res.minimizers = {first_order_candidate()};
    }
  } else {
    res.minimizers = {first_order_candidate()};
  }
  return res;
}

}  // namespace fmb::lasserre
