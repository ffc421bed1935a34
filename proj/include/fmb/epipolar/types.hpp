#pragma once

#include <optional>
#include <vector>

#include "fmb/la/small.hpp"

namespace fmb::epipolar {

// One correspondence: homogeneous pixel coordinates in image 1 and image 2,
// third component exactly 1 on ingestion.
struct PointMatch {
  la::Vec3 q;   // image 1
  la::Vec3 qp;  // image 2
};

struct GlobalCertificate {
  bool certified = false;
  int order = 0;
  int moment_rank = 0;
  // Certified lower bound on the algebraic cost of the (standardized)
  // problem the relaxation solved.
  double relax_bound = 0.0;
};

// Fundamental matrix estimate, unit Frobenius norm.
struct FMatrix {
  la::Mat3 m;
  bool rank2_certified = false;
  std::optional<GlobalCertificate> global_certificate;
};

// Per-image similarity transforms (translation + isotropic scale).
struct Standardization {
  la::Mat3 t1 = la::Mat3::identity();
  la::Mat3 t2 = la::Mat3::identity();
};

}  // namespace fmb::epipolar
