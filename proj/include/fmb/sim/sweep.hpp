#pragma once

#include "fmb/epipolar/estimators.hpp"
#include "fmb/multiview/multiview.hpp"
#include "fmb/sim/scene.hpp"

namespace fmb::sim {

enum class SweepKind { Noise, PointCount };

struct SweepConfig {
  SweepKind kind = SweepKind::Noise;
  int motion_k = 1;
  std::vector<double> grid;       // sigma values, or point counts
  int trials = 100;
  std::uint64_t base_seed = 0;
  double sigma = 0.5;             // noise level for the point-count sweep
  int n_points = 50;              // point count for the noise sweep
  SceneConfig scene;              // geometry template (seed ignored)
  epipolar::GlobalOptions global;
  multiview::BundleOptions bundle;
  int threads = 0;                // 0: hardware concurrency
};

std::vector<double> default_noise_grid();   // 0, 0.25, ..., 2
std::vector<double> default_points_grid();  // 10, 20, ..., 100

struct MethodStats {
  double mean_e_init = 0.0;
  double mean_e_ba = 0.0;
  double mean_iters = 0.0;
  int failures = 0;
};

struct SweepCell {
  double grid_value = 0.0;
  int trials = 0;
  MethodStats eightpoint;
  MethodStats global;
};

using SweepTable = std::vector<SweepCell>;

// One estimate+evaluate run per method per trial per grid value. Trial t of
// any cell uses scene seed base_seed + t; means exclude failed trials, which
// are counted per method. Deterministic in base_seed regardless of the
// thread count (results are aggregated in trial order).
SweepTable run_sweep(const SweepConfig& cfg);

}  // namespace fmb::sim
