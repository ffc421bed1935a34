#include <cmath>

#include "fmb/error.hpp"
#include "fmb/la/factor.hpp"
#include "fmb/multiview/multiview.hpp"

namespace fmb::multiview {

const char* to_string(Method m) {
  return m == Method::EightPoint ? "eightpoint" : "global";
}

std::pair<la::Vec3, la::Vec3> epipoles(const epipolar::FMatrix& f) {
  la::Matrix fm = la::to_matrix(f.m);
  la::Svd sv = la::svd(fm);
  if (sv.sigma[1] <= 1e-10) {
    fail(ErrorCode::RankDeficiencyViolated,
         "F has null space of dimension > 1");
  }
  la::Vec3 e{sv.v(0, 2), sv.v(1, 2), sv.v(2, 2)};
  la::Svd svt = la::svd(la::transpose(fm));
  la::Vec3 ep{svt.v(0, 2), svt.v(1, 2), svt.v(2, 2)};
  return {e, ep};
}

CameraPair canonical_cameras(const epipolar::FMatrix& f) {
  auto [e, ep] = epipoles(f);
  (void)e;
  const la::Mat3 h = la::mul(la::cross_matrix(ep), f.m);
  CameraPair cams;
  for (int i = 0; i < 3; ++i) {
    cams.p(i, i) = 1.0;
    for (int j = 0; j < 3; ++j) cams.pp(i, j) = h(i, j);
    cams.pp(i, 3) = ep[i];
  }
  return cams;
}

la::Mat3 fundamental_from_cameras(const CameraPair& cams) {
  // For P = [I | 0], P' = [M | m]: F = [m]x M.
  la::Mat3 m;
  la::Vec3 t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = cams.pp(i, j);
    t[i] = cams.pp(i, 3);
  }
  return la::mul(la::cross_matrix(t), m);
}

}  // namespace fmb::multiview
