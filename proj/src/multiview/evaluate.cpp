#include <cmath>

#include "fmb/error.hpp"
#include "fmb/multiview/multiview.hpp"

namespace fmb::multiview {

double rms_reprojection(const CameraPair& cams,
                        const std::vector<ScenePoint>& points,
                        const std::vector<PointMatch>& matches) {
  if (points.size() != matches.size()) {
    fail(ErrorCode::DimensionMismatch, "points vs matches count");
  }
  const std::size_t n = matches.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const la::Vec3 h1 = la::mul(cams.p, points[i].q);
    const la::Vec3 h2 = la::mul(cams.pp, points[i].q);
    if (std::fabs(h1[2]) < 1e-12 || std::fabs(h2[2]) < 1e-12) {
      fail(ErrorCode::PointAtInfinity, "projection at infinity");
    }
    const double dx1 = h1[0] / h1[2] - matches[i].q[0];
    const double dy1 = h1[1] / h1[2] - matches[i].q[1];
    const double dx2 = h2[0] / h2[2] - matches[i].qp[0];
    const double dy2 = h2[1] / h2[2] - matches[i].qp[1];
    sum += dx1 * dx1 + dy1 * dy1 + dx2 * dx2 + dy2 * dy2;
  }
  return std::sqrt(sum / (2.0 * static_cast<double>(n)));
}

EvaluationReport evaluate(const epipolar::FMatrix& f,
                          const std::vector<PointMatch>& matches,
                          const BundleOptions& opts) {
  CameraPair cams = canonical_cameras(f);
  std::vector<ScenePoint> points;
  points.reserve(matches.size());
  for (const PointMatch& m : matches) {
    points.push_back(triangulate(cams, m, f));
  }
  EvaluationReport rep;
  rep.e_init = rms_reprojection(cams, points, matches);
  BundleResult ba = bundle_adjust(cams, points, matches, opts);
  rep.e_ba = ba.e_final;
  rep.iterations = ba.iterations;
  return rep;
}

}  // namespace fmb::multiview
