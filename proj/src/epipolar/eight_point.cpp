#include <cmath>

#include "fmb/epipolar/estimators.hpp"
#include "fmb/error.hpp"
#include "fmb/la/factor.hpp"

namespace fmb::epipolar {

namespace {

// Row of the design matrix for q'^T F q, row-major F.
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

}  // namespace

la::Mat3 linear_f(const std::vector<PointMatch>& matches) {
  if (matches.size() < 8) {
    fail(ErrorCode::TooFewMatches, "linear estimator needs at least 8 matches");
  }
  la::Matrix design(matches.size(), 9);
  for (std::size_t i = 0; i < matches.size(); ++i) {
    design_row(matches[i], design.row(i));
  }
  la::Svd sv = la::svd(design);
  if (sv.sigma[7] <= 1e-8 * sv.sigma[0]) {
    fail(ErrorCode::DegenerateConfiguration,
         "design matrix numerical rank below 8");
  }
  la::Vector f9(9);
  for (int i = 0; i < 9; ++i) f9[i] = sv.v(i, 8);
  la::Mat3 f = from_vec9(f9);
  normalize_sign_scale(f);
  return f;
}

FMatrix project_rank2(const la::Mat3& ftilde) {
  la::Svd sv = la::svd(la::to_matrix(ftilde));
  if (sv.sigma[1] <= 1e-12) {
    fail(ErrorCode::RankDeficientInput,
         "input already rank <= 1; rank-2 projection ambiguous");
  }
  la::Mat3 f;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      f(i, j) = sv.sigma[0] * sv.u(i, 0) * sv.v(j, 0) +
                sv.sigma[1] * sv.u(i, 1) * sv.v(j, 1);
    }
  }
  normalize_sign_scale(f);
  FMatrix out;
  out.m = f;
  out.rank2_certified = true;
  return out;
}

FMatrix eight_point(const std::vector<PointMatch>& matches) {
  auto [std_matches, st] = standardize(matches);
  la::Mat3 ftilde = linear_f(std_matches);
  FMatrix fhat = project_rank2(ftilde);
  // Denormalize: F = T2^T Fhat T1.
  la::Mat3 f = la::mul(la::transpose(st.t2), la::mul(fhat.m, st.t1));
  normalize_sign_scale(f);
  FMatrix out;
  out.m = f;
  out.rank2_certified = true;
  return out;
}

}  // namespace fmb::epipolar
