#pragma once

#include <cstdint>
#include <vector>

#include "fmb/epipolar/types.hpp"
#include "fmb/la/small.hpp"
#include "fmb/sim/rng.hpp"

namespace fmb::sim {

using epipolar::PointMatch;

// World-to-camera rigid transform x_cam = R x_world + t.
struct MotionSpec {
  la::Mat3 r = la::Mat3::identity();
  la::Vec3 t{0.0, 0.0, 0.0};
};

struct SceneConfig {
  int n_points = 50;
  double cube_side = 10.0;       // meters
  double camera_distance = 15.0; // first camera to cube center, meters
  double focal = 700.0;          // pixels
  int res_x = 640;
  int res_y = 480;
  double principal_x = 320.0;
  double principal_y = 240.0;
  std::uint64_t seed = 0;
  double min_depth = 1.0;        // meters; resample closer points
  // Accept projections within this many pixels of the principal point; the
  // benchmark motions push projections far outside the nominal frame, so the
  // margin is generous and mainly rejects near-zero-depth blowups.
  double pixel_margin = 16.0 * 640.0;
};

// Rotation about the y axis by theta_1 = pi/3 (k = 1) or theta_2 = pi/6
// (k = 2); translations t1 = (20, 0, 5), t2 = (6, 0, 0).
MotionSpec motion(int k);

// First camera: looks at the cube center from camera_distance meters.
MotionSpec reference_camera(const SceneConfig& cfg);

// Pose of the camera displaced from `base` by `rel`: the relative transform
// between the two views is exactly `rel`.
MotionSpec compose(const MotionSpec& rel, const MotionSpec& base);

la::Mat3 intrinsics(const SceneConfig& cfg);

// Ground-truth fundamental matrix of the pair (base, rel o base):
// K^-T [t_rel]x R_rel K^-1, unit Frobenius, sign-normalized.
la::Mat3 ground_truth_f(int motion_k, const SceneConfig& cfg);

// n_points uniform samples inside the origin-centered cube.
std::vector<la::Vec3> make_scene(const SceneConfig& cfg);
std::vector<la::Vec3> make_scene(const SceneConfig& cfg, SplitMix64& rng);

// Exact projections through K[R1|t1], K[R2|t2]. Points failing the
// visibility test are regenerated from rng (up to 100 tries each); without an
// rng the first offending point throws CameraBehindScene.
std::vector<PointMatch> project_matches(std::vector<la::Vec3>& points,
                                        const MotionSpec& cam1,
                                        const MotionSpec& cam2,
                                        const SceneConfig& cfg,
                                        SplitMix64* rng);

// Scene generation + projection for benchmark motion k, deterministic in
// cfg.seed.
std::vector<PointMatch> generate_matches(const SceneConfig& cfg, int motion_k);

// Adds independent N(0, sigma^2) to every pixel coordinate of both points.
std::vector<PointMatch> add_noise(const std::vector<PointMatch>& matches,
                                  double sigma, std::uint64_t seed);

}  // namespace fmb::sim
