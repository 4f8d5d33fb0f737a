#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cmath>

namespace real {

using Vec3 = Eigen::Vector3d;
using Vec3i = Eigen::Vector3i;

/// Wrap an angle to [-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a + M_PI, 2.0 * M_PI);
  if (a < 0.0) a += 2.0 * M_PI;
  return a - M_PI;
}

/// Rotation about +z by yaw.
inline Eigen::Matrix3d yaw_rotation(double yaw) {
  Eigen::Matrix3d r;
  const double c = std::cos(yaw), s = std::sin(yaw);
  r << c, -s, 0.0,
       s,  c, 0.0,
       0.0, 0.0, 1.0;
  return r;
}

/// Unit direction for (yaw, pitch); pitch positive = up.
inline Vec3 direction(double yaw, double pitch) {
  const double cp = std::cos(pitch);
  return {std::cos(yaw) * cp, std::sin(yaw) * cp, std::sin(pitch)};
}

struct Pose {
  Vec3 position{Vec3::Zero()};
  double yaw{0.0};
};

/// Axis-aligned box given by min/max corners.
struct Aabb {
  Vec3 min{Vec3::Zero()};
  Vec3 max{Vec3::Zero()};

  bool contains(const Vec3& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
  bool contains_box(const Aabb& b) const {
    return (b.min.array() >= min.array() - 1e-9).all() &&
           (b.max.array() <= max.array() + 1e-9).all();
  }
  Vec3 size() const { return max - min; }

  /// Euclidean distance from p to the box (0 inside).
  double distance(const Vec3& p) const {
    const Vec3 d = (min - p).cwiseMax(p - max).cwiseMax(0.0);
    return d.norm();
  }
};

/// Position offset + yaw offset, the drift composition used throughout.
struct DriftState {
  Vec3 dp{Vec3::Zero()};
  double dyaw{0.0};
};

inline Pose compose_drift(const Pose& truth, const DriftState& d) {
  return {truth.position + d.dp, wrap_angle(truth.yaw + d.dyaw)};
}

}  // namespace real
