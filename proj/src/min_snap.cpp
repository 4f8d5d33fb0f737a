#include "real/min_snap.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace real {
namespace {

double falling_factorial(int k, int d) {
  double f = 1.0;
  for (int m = 0; m < d; ++m) f *= static_cast<double>(k - m);
  return f;
}

}  // namespace

Vec3 Polynomial7::derivative(int order, double t) const {
  if (order > 7) return Vec3::Zero();
  // Horner on the derivative coefficients.
  Vec3 out = falling_factorial(7, order) * coeffs.col(7);
  for (int k = 6; k >= order; --k) {
    out = out * t + falling_factorial(k, order) * coeffs.col(k);
  }
  return out;
}

Polynomial7 Polynomial7::transformed(const Eigen::Matrix3d& rot,
                                     const Vec3& shift) const {
  Polynomial7 out;
  out.duration = duration;
  out.coeffs = rot * coeffs;
  out.coeffs.col(0) += shift;
  return out;
}

double Polynomial7::arc_length(int n) const {
  double len = 0.0;
  Vec3 prev = position(0.0);
  for (int k = 1; k <= n; ++k) {
    const Vec3 p = position(duration * k / n);
    len += (p - prev).norm();
    prev = p;
  }
  return len;
}

Polynomial7 solve_segment(const BoundaryConditions& bc) {
  const double T = bc.duration;
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw SingularSystem("solve_segment: duration must be positive and finite");
  }
  for (const Vec3* v : {&bc.p0, &bc.v0, &bc.a0, &bc.j0, &bc.p1, &bc.v1, &bc.a1, &bc.j1}) {
    if (!v->allFinite()) throw SingularSystem("solve_segment: non-finite boundary value");
  }

  // Normalized time u = t/T conditions the system for any T. Derivative d at
  // u=0 pins c_d directly; the four u=1 rows give a 4x4 system in c_4..c_7.
  Eigen::Matrix4d m;
  for (int d = 0; d < 4; ++d) {
    for (int k = 4; k < 8; ++k) {
      m(d, k - 4) = falling_factorial(k, d);
    }
  }
  const Eigen::PartialPivLU<Eigen::Matrix4d> lu(m);

  Polynomial7 out;
  out.duration = T;
  for (int axis = 0; axis < 3; ++axis) {
    const double scale[4] = {1.0, T, T * T, T * T * T};
    const double start[4] = {bc.p0[axis], bc.v0[axis] * scale[1],
                             bc.a0[axis] * scale[2], bc.j0[axis] * scale[3]};
    const double end[4] = {bc.p1[axis], bc.v1[axis] * scale[1],
                           bc.a1[axis] * scale[2], bc.j1[axis] * scale[3]};
    Eigen::Matrix<double, 8, 1> c = Eigen::Matrix<double, 8, 1>::Zero();
    c[0] = start[0];
    c[1] = start[1];
    c[2] = start[2] / 2.0;
    c[3] = start[3] / 6.0;
    Eigen::Vector4d rhs;
    for (int d = 0; d < 4; ++d) {
      double acc = 0.0;
      for (int k = d; k < 4; ++k) acc += falling_factorial(k, d) * c[k];
      rhs[d] = end[d] - acc;
    }
    const Eigen::Vector4d tail = lu.solve(rhs);
    for (int k = 4; k < 8; ++k) c[k] = tail[k - 4];
    // Back to unnormalized time: coefficient of t^k is c_k / T^k.
    double tp = 1.0;
    for (int k = 0; k < 8; ++k) {
      out.coeffs(axis, k) = c[k] / tp;
      tp *= T;
    }
  }
  return out;
}

double snap_cost(const Polynomial7& poly) {
  const double T = poly.duration;
  double total = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    // Snap is cubic: sum_m s_m t^m with s_m = (m+4)!/m! * c_{m+4}.
    double s[4];
    for (int m = 0; m < 4; ++m) {
      s[m] = falling_factorial(m + 4, 4) * poly.coeffs(axis, m + 4);
    }
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) {
        total += s[m] * s[n] * std::pow(T, m + n + 1) / (m + n + 1);
      }
    }
  }
  return total;
}

double Trajectory::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

std::pair<int, double> Trajectory::locate(double t) const {
  double acc = 0.0;
  for (size_t i = 0; i < segments.size(); ++i) {
    if (t <= acc + segments[i].duration || i + 1 == segments.size()) {
      return {static_cast<int>(i), t - acc};
    }
    acc += segments[i].duration;
  }
  return {0, t};
}

TrajectorySample Trajectory::evaluate(double t) const {
  if (segments.empty()) throw TimeOutOfRange("evaluate: empty trajectory");
  const double total = total_duration();
  if (t < -1e-9 || t > total + 1e-9) {
    throw TimeOutOfRange("evaluate: time outside [0, total_duration]");
  }
  t = std::clamp(t, 0.0, total);
  const auto [idx, local_raw] = locate(t);
  const Polynomial7& seg = segments[static_cast<size_t>(idx)];
  const double local = std::clamp(local_raw, 0.0, seg.duration);
  TrajectorySample s;
  s.position = seg.position(local);
  s.velocity = seg.velocity(local);
  s.acceleration = seg.acceleration(local);
  s.jerk = seg.jerk(local);
  s.snap = seg.snap(local);
  if (fixed_yaw) {
    s.yaw = *fixed_yaw;
  } else if (s.velocity.head<2>().norm() > 1e-9) {
    s.yaw = std::atan2(s.velocity.y(), s.velocity.x());
  } else {
    s.yaw = 0.0;
  }
  return s;
}

namespace {

std::vector<double> fan_angles(double span, int n) {
  std::vector<double> out(static_cast<size_t>(n));
  if (n == 1) {
    out[0] = 0.0;
  } else {
    for (int k = 0; k < n; ++k) {
      out[static_cast<size_t>(k)] = -span / 2.0 + span * k / (n - 1);
    }
  }
  return out;
}

}  // namespace

PeacockSet build_peacock(double fov_h, double fov_v, int n_yaw, int n_pitch,
                         int n_yaw2, double l_traj, double v_max) {
  if (n_yaw < 1 || n_pitch < 1 || n_yaw2 < 1 || n_yaw % 2 == 0 ||
      n_pitch % 2 == 0 || n_yaw2 % 2 == 0) {
    throw InvalidParams("build_peacock: fan counts must be odd and >= 1");
  }
  if (!(l_traj > 0.0) || !(v_max > 0.0)) {
    throw InvalidParams("build_peacock: l_traj and v_max must be positive");
  }

  PeacockSet set;
  set.n_pitch = n_pitch;
  set.n_yaw = n_yaw;
  set.n_yaw2 = n_yaw2;
  set.l_traj = l_traj;
  set.v_max = v_max;
  set.step_duration = l_traj / v_max;
  set.pitch_angles = fan_angles(fov_v, n_pitch);
  set.yaw_angles = fan_angles(fov_h, n_yaw);
  set.yaw2_angles = fan_angles(fov_h, n_yaw2);
  set.first_steps.resize(static_cast<size_t>(n_pitch * n_yaw));
  set.second_steps.resize(static_cast<size_t>(n_pitch * n_yaw));
  set.first_arc_len.resize(static_cast<size_t>(n_pitch * n_yaw));
  set.second_arc_len.resize(static_cast<size_t>(n_pitch * n_yaw));

  const double T = set.step_duration;
  for (int i = 0; i < n_pitch; ++i) {
    for (int j = 0; j < n_yaw; ++j) {
      const Vec3 dir1 = direction(set.yaw_angles[static_cast<size_t>(j)],
                                  set.pitch_angles[static_cast<size_t>(i)]);
      BoundaryConditions bc;
      bc.duration = T;
      bc.p0 = Vec3::Zero();
      bc.p1 = l_traj * dir1;
      bc.v0 = v_max * dir1;
      bc.v1 = v_max * dir1;
      const int idx = set.flat(i, j);
      set.first_steps[static_cast<size_t>(idx)] = solve_segment(bc);
      set.first_arc_len[static_cast<size_t>(idx)] =
          set.first_steps[static_cast<size_t>(idx)].arc_length();

      auto& seconds = set.second_steps[static_cast<size_t>(idx)];
      auto& second_lens = set.second_arc_len[static_cast<size_t>(idx)];
      seconds.resize(static_cast<size_t>(n_yaw2));
      second_lens.resize(static_cast<size_t>(n_yaw2));
      for (int b = 0; b < n_yaw2; ++b) {
        // Second step fans in yaw relative to the first ray, level pitch.
        const double yaw2 = set.yaw_angles[static_cast<size_t>(j)] +
                            set.yaw2_angles[static_cast<size_t>(b)];
        const Vec3 dir2 = direction(yaw2, 0.0);
        BoundaryConditions bc2;
        bc2.duration = T;
        bc2.p0 = bc.p1;
        bc2.v0 = v_max * dir1;
        bc2.p1 = bc.p1 + l_traj * dir2;
        bc2.v1 = v_max * dir2;
        seconds[static_cast<size_t>(b)] = solve_segment(bc2);
        second_lens[static_cast<size_t>(b)] =
            seconds[static_cast<size_t>(b)].arc_length();
      }
    }
  }
  return set;
}

Trajectory refine_path(const std::vector<Vec3>& waypoints, double v_max) {
  if (waypoints.size() < 2) {
    throw InvalidParams("refine_path: need at least 2 waypoints");
  }
  if (!(v_max > 0.0)) throw InvalidParams("refine_path: v_max must be positive");
  Trajectory traj;
  for (size_t i = 0; i + 1 < waypoints.size(); ++i) {
    const Vec3 d = waypoints[i + 1] - waypoints[i];
    const double len = d.norm();
    if (len < 1e-9) throw DegenerateEdge("refine_path: zero-length edge");
    const Vec3 dir = d / len;
    BoundaryConditions bc;
    bc.duration = len / v_max;
    bc.p0 = waypoints[i];
    bc.p1 = waypoints[i + 1];
    bc.v0 = v_max * dir;
    bc.v1 = v_max * dir;
    traj.segments.push_back(solve_segment(bc));
  }
  return traj;
}

Trajectory hover_trajectory(const Pose& pose, double duration) {
  BoundaryConditions bc;
  bc.duration = duration;
  bc.p0 = pose.position;
  bc.p1 = pose.position;
  Trajectory traj;
  traj.segments.push_back(solve_segment(bc));
  traj.fixed_yaw = pose.yaw;
  return traj;
}

}  // namespace real
