#pragma once

#include <array>
#include <cmath>

#include "fmb/la/matrix.hpp"

namespace fmb::la {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

struct Mat3 {
  double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};

  static Mat3 identity() {
    Mat3 r;
    r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
    return r;
  }
  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }
};

// 3x4 projection matrix.
struct Mat34 {
  double m[3][4] = {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }
};

inline Vec3 mul(const Mat3& a, const Vec3& x) {
  Vec3 y{};
  for (int i = 0; i < 3; ++i)
    y[i] = a(i, 0) * x[0] + a(i, 1) * x[1] + a(i, 2) * x[2];
  return y;
}

inline Vec3 mul(const Mat34& p, const Vec4& x) {
  Vec3 y{};
  for (int i = 0; i < 3; ++i)
    y[i] = p(i, 0) * x[0] + p(i, 1) * x[1] + p(i, 2) * x[2] + p(i, 3) * x[3];
  return y;
}

inline Mat3 mul(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    }
  return c;
}

inline Mat3 transpose(const Mat3& a) {
  Mat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = a(j, i);
  return t;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline Mat3 cross_matrix(const Vec3& v) {
  Mat3 k;
  k(0, 1) = -v[2];
  k(0, 2) = v[1];
  k(1, 0) = v[2];
  k(1, 2) = -v[0];
  k(2, 0) = -v[1];
  k(2, 1) = v[0];
  return k;
}

inline double det(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

inline double frobenius(const Mat3& a) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

inline Mat3 scaled(const Mat3& a, double s) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(i, j) * s;
  return r;
}

inline Matrix to_matrix(const Mat3& a) {
  Matrix r(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(i, j);
  return r;
}

inline Mat3 from_matrix(const Matrix& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(i, j);
  return r;
}

// Inverse of an invertible 3x3 (adjugate over determinant).
Mat3 inverse(const Mat3& a);

}  // namespace fmb::la
