#include "fmb/sim/scene.hpp"

#include <cmath>

#include "fmb/epipolar/estimators.hpp"
#include "fmb/error.hpp"

namespace fmb::sim {

MotionSpec motion(int k) {
  if (k != 1 && k != 2) fail(ErrorCode::InvalidArgument, "motion index must be 1 or 2");
  const double theta = (k == 1) ? M_PI / 3.0 : M_PI / 6.0;
  MotionSpec m;
  m.r(0, 0) = std::cos(theta);
  m.r(0, 2) = std::sin(theta);
  m.r(1, 1) = 1.0;
  m.r(2, 0) = -std::sin(theta);
  m.r(2, 2) = std::cos(theta);
  m.t = (k == 1) ? la::Vec3{20.0, 0.0, 5.0} : la::Vec3{6.0, 0.0, 0.0};
  return m;
}

MotionSpec reference_camera(const SceneConfig& cfg) {
  MotionSpec m;
  m.t = {0.0, 0.0, cfg.camera_distance};
  return m;
}

MotionSpec compose(const MotionSpec& rel, const MotionSpec& base) {
  MotionSpec out;
  out.r = la::mul(rel.r, base.r);
  out.t = la::mul(rel.r, base.t);
  for (int i = 0; i < 3; ++i) out.t[i] += rel.t[i];
  return out;
}

la::Mat3 intrinsics(const SceneConfig& cfg) {
  la::Mat3 k;
  k(0, 0) = cfg.focal;
  k(1, 1) = cfg.focal;
  k(0, 2) = cfg.principal_x;
  k(1, 2) = cfg.principal_y;
  k(2, 2) = 1.0;
  return k;
}

la::Mat3 ground_truth_f(int motion_k, const SceneConfig& cfg) {
  const MotionSpec rel = motion(motion_k);
  const la::Mat3 k = intrinsics(cfg);
  const la::Mat3 kinv = la::inverse(k);
  la::Mat3 f = la::mul(la::transpose(kinv),
                       la::mul(la::cross_matrix(rel.t), la::mul(rel.r, kinv)));
  epipolar::normalize_sign_scale(f);
  return f;
}

std::vector<la::Vec3> make_scene(const SceneConfig& cfg, SplitMix64& rng) {
  const double half = 0.5 * cfg.cube_side;
  std::vector<la::Vec3> pts(cfg.n_points);
  for (auto& p : pts) {
    p[0] = rng.next_uniform(-half, half);
    p[1] = rng.next_uniform(-half, half);
    p[2] = rng.next_uniform(-half, half);
  }
  return pts;
}

std::vector<la::Vec3> make_scene(const SceneConfig& cfg) {
  SplitMix64 rng(cfg.seed);
  return make_scene(cfg, rng);
}

namespace {

bool project_one(const la::Mat3& k, const MotionSpec& cam, const la::Vec3& q,
                 const SceneConfig& cfg, la::Vec3* pixel) {
  la::Vec3 xc = la::mul(cam.r, q);
  for (int i = 0; i < 3; ++i) xc[i] += cam.t[i];
  if (xc[2] < cfg.min_depth) return false;
  const la::Vec3 h = la::mul(k, xc);
  const double x = h[0] / h[2];
  const double y = h[1] / h[2];
  if (std::fabs(x - cfg.principal_x) > cfg.pixel_margin) return false;
  if (std::fabs(y - cfg.principal_y) > cfg.pixel_margin) return false;
  *pixel = {x, y, 1.0};
  return true;
}

}  // namespace

std::vector<PointMatch> project_matches(std::vector<la::Vec3>& points,
                                        const MotionSpec& cam1,
                                        const MotionSpec& cam2,
                                        const SceneConfig& cfg,
                                        SplitMix64* rng) {
  const la::Mat3 k = intrinsics(cfg);
  const double half = 0.5 * cfg.cube_side;
  std::vector<PointMatch> out;
  out.reserve(points.size());
  for (la::Vec3& q : points) {
    PointMatch m;
    int tries = 0;
    while (true) {
      if (project_one(k, cam1, q, cfg, &m.q) &&
          project_one(k, cam2, q, cfg, &m.qp)) {
        break;
      }
      if (rng == nullptr || ++tries >= 100) {
        fail(ErrorCode::CameraBehindScene, "visible point regeneration failed");
      }
      q[0] = rng->next_uniform(-half, half);
      q[1] = rng->next_uniform(-half, half);
      q[2] = rng->next_uniform(-half, half);
    }
    out.push_back(m);
  }
  return out;
}

std::vector<PointMatch> generate_matches(const SceneConfig& cfg, int motion_k) {
  SplitMix64 rng(cfg.seed);
  std::vector<la::Vec3> pts = make_scene(cfg, rng);
  const MotionSpec cam1 = reference_camera(cfg);
  const MotionSpec cam2 = compose(motion(motion_k), cam1);
  return project_matches(pts, cam1, cam2, cfg, &rng);
}

std::vector<PointMatch> add_noise(const std::vector<PointMatch>& matches,
                                  double sigma, std::uint64_t seed) {
  if (sigma < 0.0) fail(ErrorCode::InvalidArgument, "negative noise level");
  if (sigma == 0.0) return matches;
  SplitMix64 rng(seed);
  std::vector<PointMatch> out = matches;
  for (PointMatch& m : out) {
    m.q[0] += sigma * rng.next_normal();
    m.q[1] += sigma * rng.next_normal();
    m.qp[0] += sigma * rng.next_normal();
    m.qp[1] += sigma * rng.next_normal();
  }
  return out;
}

}  // namespace fmb::sim
