#include <cmath>

#include "fmb/epipolar/estimators.hpp"
#include "fmb/error.hpp"

namespace fmb::epipolar {

namespace {

la::Mat3 standardizing_transform(const std::vector<PointMatch>& matches,
                                 bool second_image) {
  const std::size_t n = matches.size();
  double cx = 0.0, cy = 0.0;
  for (const PointMatch& m : matches) {
    const la::Vec3& p = second_image ? m.qp : m.q;
    cx += p[0];
    cy += p[1];
  }
  cx /= static_cast<double>(n);
  cy /= static_cast<double>(n);
  double msd = 0.0;
  for (const PointMatch& m : matches) {
    const la::Vec3& p = second_image ? m.qp : m.q;
    const double dx = p[0] - cx;
    const double dy = p[1] - cy;
    msd += dx * dx + dy * dy;
  }
  const double rms = std::sqrt(msd / static_cast<double>(n));
  if (!(rms > 1e-12)) {
    fail(ErrorCode::DegenerateCloud, "all points in one image coincide");
  }
  const double s = std::sqrt(2.0) / rms;
  la::Mat3 t;
  t(0, 0) = s;
  t(1, 1) = s;
  t(2, 2) = 1.0;
  t(0, 2) = -s * cx;
  t(1, 2) = -s * cy;
  return t;
}

}  // namespace

std::pair<std::vector<PointMatch>, Standardization> standardize(
    const std::vector<PointMatch>& matches) {
  if (matches.size() < 2) {
    fail(ErrorCode::DegenerateCloud, "need at least 2 points to standardize");
  }
  Standardization st;
  st.t1 = standardizing_transform(matches, false);
  st.t2 = standardizing_transform(matches, true);
  std::vector<PointMatch> out;
  out.reserve(matches.size());
  for (const PointMatch& m : matches) {
    PointMatch s;
    s.q = la::mul(st.t1, m.q);
    s.qp = la::mul(st.t2, m.qp);
    out.push_back(s);
  }
  return {std::move(out), st};
}

double algebraic_cost(const la::Mat3& f, const std::vector<PointMatch>& matches) {
  double total = 0.0;
  for (const PointMatch& m : matches) {
    const la::Vec3 fq = la::mul(f, m.q);
    const double r = m.qp[0] * fq[0] + m.qp[1] * fq[1] + m.qp[2] * fq[2];
    total += r * r;
  }
  return total;
}

void normalize_sign_scale(la::Mat3& f) {
  const double nrm = la::frobenius(f);
  double best = 0.0;
  double sign = 1.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double v = std::fabs(f(i, j));
      if (v > best) {
        best = v;
        sign = (f(i, j) >= 0.0) ? 1.0 : -1.0;
      }
    }
  }
  const double scale = sign / nrm;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) f(i, j) *= scale;
}

}  // namespace fmb::epipolar
