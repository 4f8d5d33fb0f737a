#pragma once

#include <optional>
#include <vector>

#include "real/errors.hpp"
#include "real/geometry.hpp"

namespace real {

/// Full state constraints at both ends of one segment.
struct BoundaryConditions {
  Vec3 p0{Vec3::Zero()}, v0{Vec3::Zero()}, a0{Vec3::Zero()}, j0{Vec3::Zero()};
  Vec3 p1{Vec3::Zero()}, v1{Vec3::Zero()}, a1{Vec3::Zero()}, j1{Vec3::Zero()};
  double duration{1.0};
};

/// One degree-7 segment, three axes. Row = axis, column = power of local t.
struct Polynomial7 {
  Eigen::Matrix<double, 3, 8> coeffs{Eigen::Matrix<double, 3, 8>::Zero()};
  double duration{0.0};

  Vec3 derivative(int order, double t) const;
  Vec3 position(double t) const { return derivative(0, t); }
  Vec3 velocity(double t) const { return derivative(1, t); }
  Vec3 acceleration(double t) const { return derivative(2, t); }
  Vec3 jerk(double t) const { return derivative(3, t); }
  Vec3 snap(double t) const { return derivative(4, t); }

  /// Rigid transform p -> rot*p + shift applied to the whole segment.
  Polynomial7 transformed(const Eigen::Matrix3d& rot, const Vec3& shift) const;

  /// Polyline length sampled at n intervals.
  double arc_length(int n = 64) const;
};

/// Unique degree-7 polynomial through the 8 boundary constraints, solved per
/// axis on a time-normalized basis. Throws SingularSystem on bad input.
Polynomial7 solve_segment(const BoundaryConditions& bc);

/// Closed-form integral of squared snap over the segment, summed over axes.
double snap_cost(const Polynomial7& poly);

struct TrajectorySample {
  Vec3 position, velocity, acceleration, jerk, snap;
  double yaw;
};

/// Piecewise-polynomial trajectory. Yaw follows the velocity direction unless
/// a fixed yaw target is set (loop-closing terminal yaw match).
struct Trajectory {
  std::vector<Polynomial7> segments;
  std::optional<double> fixed_yaw;

  double total_duration() const;
  bool empty() const { return segments.empty(); }

  /// Sample at time t in [0, total_duration]. Throws TimeOutOfRange.
  TrajectorySample evaluate(double t) const;

  /// Index of the segment active at t and the local time within it.
  std::pair<int, double> locate(double t) const;
};

/// Precomputed two-step fan spanning the sensor field of view. First steps
/// leave the body origin at v_max along each (pitch, yaw) ray; second steps
/// continue from each ray tip with a level yaw fan relative to that ray.
struct PeacockSet {
  int n_pitch{0}, n_yaw{0}, n_yaw2{0};
  std::vector<double> pitch_angles;   // theta_i
  std::vector<double> yaw_angles;     // psi_j
  std::vector<double> yaw2_angles;    // relative second-step yaw
  std::vector<Polynomial7> first_steps;                // [i * n_yaw + j]
  std::vector<std::vector<Polynomial7>> second_steps;  // [i * n_yaw + j][b]
  std::vector<double> first_arc_len;
  std::vector<std::vector<double>> second_arc_len;
  double l_traj{0.0}, v_max{0.0}, step_duration{0.0};

  int flat(int i, int j) const { return i * n_yaw + j; }
  const Polynomial7& first(int i, int j) const { return first_steps[flat(i, j)]; }
  Vec3 endpoint(int i, int j) const { return first(i, j).position(step_duration); }
  Vec3 ray_direction(int i, int j) const {
    return direction(yaw_angles[j], pitch_angles[i]);
  }
};

/// Body-frame fan over fov_h x fov_v. Counts must be odd and >= 1 so the
/// straight-ahead ray is sampled. Throws InvalidParams.
PeacockSet build_peacock(double fov_h, double fov_v, int n_yaw, int n_pitch,
                         int n_yaw2, double l_traj, double v_max);

/// Refine a node path into one min-snap segment per edge: duration l/v_max,
/// boundary speed v_max along each edge, zero acceleration/jerk at joints.
/// Throws DegenerateEdge on zero-length edges.
Trajectory refine_path(const std::vector<Vec3>& waypoints, double v_max);

/// Stationary segment holding `pose` for `duration` seconds.
Trajectory hover_trajectory(const Pose& pose, double duration);

}  // namespace real
