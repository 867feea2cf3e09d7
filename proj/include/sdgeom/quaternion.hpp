#pragma once

#include <cmath>

#include <Eigen/Core>

namespace sdgeom {

/// Hamilton quaternion w + x i + y j + z k, identified with the ambient
/// point (x1, x2, x3, x4) = (w, x, y, z) of R^4.
struct Quaternion {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  static Quaternion from_vector(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }
  Eigen::Vector4d vector() const { return {w, x, y, z}; }

  /// Imaginary unit e_j (j = 1, 2, 3 -> i, j, k); e_0 = 1.
  static Quaternion unit(int j) {
    Quaternion q{0.0, 0.0, 0.0, 0.0};
    switch (j) {
      case 0: q.w = 1.0; break;
      case 1: q.x = 1.0; break;
      case 2: q.y = 1.0; break;
      default: q.z = 1.0; break;
    }
    return q;
  }

  /// exp(t e_j) = cos t + sin t e_j.
  static Quaternion exp_imaginary(int j, double t) {
    Quaternion q = unit(j);
    const double s = std::sin(t);
    q.x *= s;
    q.y *= s;
    q.z *= s;
    q.w = std::cos(t);
    return q;
  }

  Quaternion conj() const { return {w, -x, -y, -z}; }
  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z, a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x, a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend Quaternion operator*(double s, const Quaternion& a) { return {s * a.w, s * a.x, s * a.y, s * a.z}; }
  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
};

/// Matrix of v -> v * q acting on ambient coordinates.
inline Eigen::Matrix4d right_multiplication(const Quaternion& q) {
  Eigen::Matrix4d m;
  for (int c = 0; c < 4; ++c) m.col(c) = (Quaternion::from_vector(Eigen::Vector4d::Unit(c)) * q).vector();
  return m;
}

/// Matrix of v -> q * v acting on ambient coordinates.
inline Eigen::Matrix4d left_multiplication(const Quaternion& q) {
  Eigen::Matrix4d m;
  for (int c = 0; c < 4; ++c) m.col(c) = (q * Quaternion::from_vector(Eigen::Vector4d::Unit(c))).vector();
  return m;
}

}  // namespace sdgeom
