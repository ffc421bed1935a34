#include "fmb/sim/sweep.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "fmb/error.hpp"

namespace fmb::sim {

std::vector<double> default_noise_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 8; ++i) g.push_back(0.25 * i);
  return g;
}

std::vector<double> default_points_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 10; ++i) g.push_back(10.0 * i);
  return g;
}

namespace {

constexpr std::uint64_t kNoiseStream = 0x517CC1B727220A95ULL;

struct TrialOutcome {
  bool ok_8pt = false;
  bool ok_gp = false;
  multiview::EvaluationReport rep_8pt;
  multiview::EvaluationReport rep_gp;
};

}  // namespace

SweepTable run_sweep(const SweepConfig& cfg) {
  if (cfg.grid.empty()) fail(ErrorCode::InvalidArgument, "empty sweep grid");
  if (cfg.trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");

  SweepTable table;
  for (double value : cfg.grid) {
    SceneConfig scene = cfg.scene;
    double sigma = cfg.sigma;
    if (cfg.kind == SweepKind::Noise) {
      scene.n_points = cfg.n_points;
      sigma = value;
    } else {
      scene.n_points = static_cast<int>(value);
    }

    std::vector<TrialOutcome> outcomes(cfg.trials);
    auto run_trial = [&](int t) {
      SceneConfig sc = scene;
      sc.seed = cfg.base_seed + static_cast<std::uint64_t>(t);
      TrialOutcome& out = outcomes[t];
      std::vector<PointMatch> noisy;
      try {
        std::vector<PointMatch> exact = generate_matches(sc, cfg.motion_k);
        noisy = add_noise(exact, sigma, sc.seed ^ kNoiseStream);
      } catch (const Error&) {
        return;  // both methods fail on generation failure
      }
      try {
        epipolar::FMatrix f = epipolar::eight_point(noisy);
        out.rep_8pt = multiview::evaluate(f, noisy, cfg.bundle);
        out.rep_8pt.method = multiview::Method::EightPoint;
        out.ok_8pt = true;
      } catch (const Error&) {
      }
      try {
        epipolar::FMatrix f = epipolar::global_f(noisy, cfg.global);
        out.rep_gp = multiview::evaluate(f, noisy, cfg.bundle);
        out.rep_gp.method = multiview::Method::Global;
        out.ok_gp = true;
      } catch (const Error&) {
      }
    };

    unsigned nthreads = cfg.threads > 0
                            ? static_cast<unsigned>(cfg.threads)
                            : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(cfg.trials));
    if (nthreads <= 1) {
      for (int t = 0; t < cfg.trials; ++t) run_trial(t);
    } else {
      std::atomic<int> next{0};
      std::vector<std::thread> pool;
      pool.reserve(nthreads);
      for (unsigned w = 0; w < nthreads; ++w) {
        pool.emplace_back([&] {
          while (true) {
            const int t = next.fetch_add(1);
            if (t >= cfg.trials) break;
            run_trial(t);
          }
        });
      }
      for (std::thread& th : pool) th.join();
    }

    // Aggregate in trial order so sums are reproducible bitwise.
    SweepCell cell;
    cell.grid_value = value;
    cell.trials = cfg.trials;
    double s8i = 0.0, s8b = 0.0, s8n = 0.0;
    double sgi = 0.0, sgb = 0.0, sgn = 0.0;
    int n8 = 0, ng = 0;
    for (const TrialOutcome& out : outcomes) {
      if (out.ok_8pt) {
        s8i += out.rep_8pt.e_init;
        s8b += out.rep_8pt.e_ba;
        s8n += out.rep_8pt.iterations;
        ++n8;
      }
      if (out.ok_gp) {
        sgi += out.rep_gp.e_init;
        sgb += out.rep_gp.e_ba;
        sgn += out.rep_gp.iterations;
        ++ng;
      }
    }
    cell.eightpoint.failures = cfg.trials - n8;
    cell.global.failures = cfg.trials - ng;
    if (n8 > 0) {
      cell.eightpoint.mean_e_init = s8i / n8;
      cell.eightpoint.mean_e_ba = s8b / n8;
      cell.eightpoint.mean_iters = s8n / n8;
    }
    if (ng > 0) {
      cell.global.mean_e_init = sgi / ng;
      cell.global.mean_e_ba = sgb / ng;
      cell.global.mean_iters = sgn / ng;
    }
    table.push_back(cell);
  }
  return table;
}

}  // namespace fmb::sim
