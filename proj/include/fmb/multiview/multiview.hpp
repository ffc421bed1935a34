#pragma once

#include <string>
#include <vector>

#include "fmb/epipolar/types.hpp"
#include "fmb/la/small.hpp"

namespace fmb::multiview {

using epipolar::PointMatch;

struct CameraPair {
  la::Mat34 p;   // [I | 0]
  la::Mat34 pp;  // [[e']x F | e']
};

struct ScenePoint {
  la::Vec4 q{};  // homogeneous, unit norm
};

enum class Method { EightPoint, Global };
const char* to_string(Method m);

struct EvaluationReport {
  Method method = Method::EightPoint;
  double e_init = 0.0;      // RMS reprojection error before refinement (px)
  double e_ba = 0.0;        // after refinement
  int iterations = 0;       // refinement iterations; cap + 1 when capped
  double time_s = 0.0;      // time to compute F (filled by the caller)
};

// Null vectors of F and F^T (unit norm). Epipoles at infinity (third
// coordinate ~ 0) are valid outputs.
std::pair<la::Vec3, la::Vec3> epipoles(const epipolar::FMatrix& f);

// P = [I | 0], P' = [[e']x F | e'].
CameraPair canonical_cameras(const epipolar::FMatrix& f);

// Fundamental matrix implied by a canonical pair (for round-trip checks).
la::Mat3 fundamental_from_cameras(const CameraPair& cams);

// Correct (q, q') to the nearest pair satisfying the epipolar constraint
// exactly (epipolar-pencil parameterization, degree-6 polynomial minimized by
// companion-matrix root finding, asymptote fallback). Returns homogeneous
// corrected points.
std::pair<la::Vec3, la::Vec3> optimal_correction(const la::Mat3& f,
                                                 const la::Vec3& q,
                                                 const la::Vec3& qp);

// Homogeneous linear (DLT) triangulation of a pair.
ScenePoint linear_triangulate(const CameraPair& cams, const la::Vec3& q,
                              const la::Vec3& qp);

// Optimal two-view triangulation: epipolar correction keyed to F, then DLT.
ScenePoint triangulate(const CameraPair& cams, const PointMatch& match,
                       const epipolar::FMatrix& f);

double rms_reprojection(const CameraPair& cams,
                        const std::vector<ScenePoint>& points,
                        const std::vector<PointMatch>& matches);

struct BundleOptions {
  int max_iter = 1000;
  double gradient_tol = 1e-10;
  double step_tol = 1e-12;
  double cost_rel_tol = 1e-12;
  double lambda_init_factor = 1e-3;  // times mean diagonal of J^T J
  double lambda_max = 1e12;
};

struct BundleResult {
  la::Mat34 pp;
  std::vector<ScenePoint> points;
  int iterations = 0;   // max_iter + 1 signals the cap was hit
  double e_final = 0.0;
  bool diverged = false;
  std::vector<double> accepted_costs;  // cost after each accepted step
};

// Two-view projective refinement: Levenberg-Marquardt over the 12 entries of
// P' and the homogeneous point coordinates, P fixed at [I | 0]. Accepted
// steps never increase the cost; points are renormalized after acceptance.
BundleResult bundle_adjust(const CameraPair& cams,
                           const std::vector<ScenePoint>& points,
                           const std::vector<PointMatch>& matches,
                           const BundleOptions& opts = {});

// Full pipeline: cameras, triangulation, e_init, refinement, e_ba.
EvaluationReport evaluate(const epipolar::FMatrix& f,
                          const std::vector<PointMatch>& matches,
                          const BundleOptions& opts = {});

}  // namespace fmb::multiview
