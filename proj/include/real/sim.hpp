#pragma once

#include <optional>
#include <random>

#include "real/errors.hpp"
#include "real/geometry.hpp"
#include "real/min_snap.hpp"
#include "real/world.hpp"

namespace real {

/// Odometry drift: a random walk scaled by sqrt(distance traveled) and
/// sqrt(|yaw change|), optionally coupled so heading error rotates the
/// perceived motion. All sigmas zero = perfect odometry.
struct DriftModel {
  double sigma_xy{0.0};   // m per sqrt(m)
  double sigma_z{0.0};    // m per sqrt(m)
  double sigma_yaw{0.0};  // rad per sqrt(rad)
  bool yaw_couple{true};
};

/// Deterministic kinematic simulator. Owns the true pose, the drifting
/// estimate (est = true (+) drift), and the active trajectory clock.
class Simulator {
 public:
  Simulator(const World& world, const DriftModel& drift, std::uint64_t seed,
            double inflation_radius);

  /// Activate a trajectory planned in the estimated frame. Tracking is
  /// anchored so the true pose moves continuously from where it is now.
  void set_trajectory(const Trajectory& traj);
  void clear_trajectory();
  bool has_trajectory() const { return trajectory_.has_value(); }
  double trajectory_clock() const { return clock_; }
  double trajectory_remaining() const;

  /// Advance by dt: track the trajectory position exactly, slew yaw toward
  /// the trajectory's yaw target at most yaw_rate_max, advance drift, and
  /// update the crash flag. Throws NoActiveTrajectory.
  void step(double dt, double yaw_rate_max);

  /// Drift-correcting closure against a previously stored node state.
  /// Fires only when the true pose is within arrival_radius / yaw_tol of the
  /// node's true-frame state; returns false (and changes nothing) otherwise.
  bool apply_loop_closure(const Vec3& node_position, double node_yaw,
                          const DriftState& node_drift, double residual_sigma,
                          double arrival_radius, double yaw_tol);

  Pose ground_truth() const { return true_pose_; }
  Pose odometry() const { return compose_drift(true_pose_, drift_); }
  const DriftState& drift() const { return drift_; }
  double time() const { return time_; }
  bool crashed() const { return crash_flag_; }
  double path_length() const { return path_length_; }
  double yaw_travel() const { return yaw_travel_; }
  const World& world() const { return world_; }

 private:
  World world_;
  DriftModel drift_model_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
  double inflation_radius_;

  Pose true_pose_;
  DriftState drift_;
  double time_{0.0};
  bool crash_flag_{false};
  double path_length_{0.0};
  double yaw_travel_{0.0};

  std::optional<Trajectory> trajectory_;
  double clock_{0.0};
  Vec3 anchor_offset_{Vec3::Zero()};
};

}  // namespace real
