// Optimal two-view triangulation: correct the measured pair to the nearest
// pair satisfying the epipolar constraint exactly (parameterize the epipolar
// pencil by t, minimize the squared image distance whose stationarity
// condition is a degree-6 polynomial, solved via the companion matrix), then
// triangulate the corrected pair linearly.

#include <algorithm>
#include <cmath>
#include <limits>

#include "fmb/error.hpp"
#include "fmb/la/factor.hpp"
#include "fmb/multiview/multiview.hpp"

namespace fmb::multiview {

namespace {

using Poly = std::vector<double>;  // ascending coefficients

Poly pmul(const Poly& u, const Poly& v) {
  Poly r(u.size() + v.size() - 1, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i + j] += u[i] * v[j];
  return r;
}

void paxpy(Poly& u, double s, const Poly& v) {
  if (u.size() < v.size()) u.resize(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) u[i] += s * v[i];
}

// Real roots of a polynomial via the companion matrix, with variable scaling
// for balance. Near-real complex pairs are kept (their real parts enter the
// candidate list; spurious candidates lose the cost comparison).
std::vector<double> real_roots(Poly c) {
  const double maxc = [&] {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::fabs(v));
    return m;
  }();
  if (maxc == 0.0) return {};
  while (!c.empty() && std::fabs(c.back()) <= 1e-14 * maxc) c.pop_back();
  if (c.size() <= 1) return {};

  const std::size_t d = c.size() - 1;
  double scale = 1.0;
  if (c[0] != 0.0) {
    scale = std::pow(std::fabs(c[0] / c.back()), 1.0 / static_cast<double>(d));
    if (!(scale > 1e-8) || !(scale < 1e8)) scale = 1.0;
  }
  double pw = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] *= pw;
    pw *= scale;
  }
  const double lead = c.back();
  for (double& v : c) v /= lead;

  la::Matrix comp(d, d);
  for (std::size_t i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < d; ++i) comp(i, d - 1) = -c[i];
  la::RealSchur sch = la::real_schur(comp, false);
  if (!sch.converged) {
    fail(ErrorCode::NumericalFailure, "companion eigensolve stalled");
  }
  std::vector<double> roots;
  for (const auto& ev : la::schur_eigenvalues(sch.t)) {
    if (std::fabs(ev.imag()) <= 1e-8 * (1.0 + std::fabs(ev.real()))) {
      roots.push_back(ev.real() * scale);
    }
  }
  return roots;
}

la::Vec3 closest_point_on_line(const la::Vec3& l) {
  // Nearest point to the origin on the line (l0, l1, l2).
  return {-l[0] * l[2], -l[1] * l[2], l[0] * l[0] + l[1] * l[1]};
}

}  // namespace

std::pair<la::Vec3, la::Vec3> optimal_correction(const la::Mat3& f_in,
                                                 const la::Vec3& q,
                                                 const la::Vec3& qp) {
  // Translate both measured points to their image origins.
  la::Mat3 tinv = la::Mat3::identity();  // maps translated frame back
  tinv(0, 2) = q[0];
  tinv(1, 2) = q[1];
  la::Mat3 tpinv = la::Mat3::identity();
  tpinv(0, 2) = qp[0];
  tpinv(1, 2) = qp[1];
  // F <- T'^-T F T^-1
  la::Mat3 f = la::mul(la::transpose(tpinv), la::mul(f_in, tinv));

  // Epipoles of the translated F, normalized so e1^2 + e2^2 = 1.
  la::Matrix fm = la::to_matrix(f);
  la::Svd sv = la::svd(fm);
  la::Vec3 e{sv.v(0, 2), sv.v(1, 2), sv.v(2, 2)};
  la::Svd svt = la::svd(la::transpose(fm));
  la::Vec3 ep{svt.v(0, 2), svt.v(1, 2), svt.v(2, 2)};
  const double n1 = e[0] * e[0] + e[1] * e[1];
  const double n2 = ep[0] * ep[0] + ep[1] * ep[1];
  if (n1 <= 1e-24 * (e[2] * e[2]) || n2 <= 1e-24 * (ep[2] * ep[2])) {
    fail(ErrorCode::NumericalFailure, "measured point coincides with epipole");
  }
  for (int i = 0; i < 3; ++i) e[i] /= std::sqrt(n1);
  for (int i = 0; i < 3; ++i) ep[i] /= std::sqrt(n2);

  // Rotate both images so the epipoles lie on the x-axis.
  la::Mat3 r = la::Mat3::identity();
  r(0, 0) = e[0];
  r(0, 1) = e[1];
  r(1, 0) = -e[1];
  r(1, 1) = e[0];
  la::Mat3 rp = la::Mat3::identity();
  rp(0, 0) = ep[0];
  rp(0, 1) = ep[1];
  rp(1, 0) = -ep[1];
  rp(1, 1) = ep[0];
  f = la::mul(rp, la::mul(f, la::transpose(r)));

  const double fe = e[2];
  const double fep = ep[2];
  const double a = f(1, 1), b = f(1, 2), c = f(2, 1), d = f(2, 2);

  // g(t) = t((at+b)^2 + f'^2 (ct+d)^2)^2 - (ad-bc)(1+f^2 t^2)^2 (at+b)(ct+d)
  const Poly p1{b, a};
  const Poly p2{d, c};
  Poly a2 = pmul(p1, p1);
  paxpy(a2, fep * fep, pmul(p2, p2));
  Poly term1 = pmul(a2, a2);
  term1.insert(term1.begin(), 0.0);  // times t
  const Poly b2{1.0, 0.0, fe * fe};
  Poly term2 = pmul(pmul(b2, b2), pmul(p1, p2));
  Poly g = term1;
  paxpy(g, -(a * d - b * c), term2);

  auto cost_at = [&](double t) {
    const double den1 = 1.0 + fe * fe * t * t;
    const double atb = a * t + b;
    const double ctd = c * t + d;
    const double den2 = atb * atb + fep * fep * ctd * ctd;
    if (den2 == 0.0) return std::numeric_limits<double>::infinity();
    return t * t / den1 + ctd * ctd / den2;
  };

  std::vector<double> candidates = real_roots(g);
  candidates.push_back(0.0);

  double best_t = 0.0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (double t : candidates) {
    const double s = cost_at(t);
    if (s < best_cost) {
      best_cost = s;
      best_t = t;
    }
  }
  // Asymptote t -> inf: the epipolar line (f, 0, -1) in image 1.
  const double asym =
      (fe != 0.0 ? 1.0 / (fe * fe) : std::numeric_limits<double>::infinity()) +
      c * c / (a * a + fep * fep * c * c);
  la::Vec3 l1, l2;
  if (asym < best_cost) {
    l1 = {fe, 0.0, -1.0};
    l2 = {-fep * c, a, c};
  } else {
    const double t = best_t;
    l1 = {t * fe, 1.0, -t};
    l2 = {-fep * (c * t + d), a * t + b, c * t + d};
  }
  la::Vec3 x1 = closest_point_on_line(l1);
  la::Vec3 x2 = closest_point_on_line(l2);

  // Back to the original frames: x = T^-1 R^T x_rotated.
  x1 = la::mul(tinv, la::mul(la::transpose(r), x1));
  x2 = la::mul(tpinv, la::mul(la::transpose(rp), x2));
  return {x1, x2};
}

ScenePoint linear_triangulate(const CameraPair& cams, const la::Vec3& q,
                              const la::Vec3& qp) {
  la::Matrix a(4, 4);
  auto put_rows = [&](const la::Mat34& p, const la::Vec3& x, std::size_t base) {
    for (int j = 0; j < 4; ++j) {
      a(base, j) = x[0] * p(2, j) - x[2] * p(0, j);
      a(base + 1, j) = x[1] * p(2, j) - x[2] * p(1, j);
    }
  };
  put_rows(cams.p, q, 0);
  put_rows(cams.pp, qp, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    double nrm = 0.0;
    for (int j = 0; j < 4; ++j) nrm += a(i, j) * a(i, j);
    nrm = std::sqrt(nrm);
    if (nrm > 0.0) {
      for (int j = 0; j < 4; ++j) a(i, j) /= nrm;
    }
  }
  la::Svd sv = la::svd(a);
  ScenePoint out;
  for (int i = 0; i < 4; ++i) out.q[i] = sv.v(i, 3);
  return out;
}

ScenePoint triangulate(const CameraPair& cams, const PointMatch& match,
                       const epipolar::FMatrix& f) {
  auto [q, qp] = optimal_correction(f.m, match.q, match.qp);
  return linear_triangulate(cams, q, qp);
}

}  // namespace fmb::multiview
