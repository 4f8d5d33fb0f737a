#include "real/sim.hpp"

#include <cmath>

namespace real {

Simulator::Simulator(const World& world, const DriftModel& drift,
                     std::uint64_t seed, double inflation_radius)
    : world_(world),
      drift_model_(drift),
      rng_(seed),
      inflation_radius_(inflation_radius),
      true_pose_(world.start) {}

void Simulator::set_trajectory(const Trajectory& traj) {
  trajectory_ = traj;
  clock_ = 0.0;
  anchor_offset_ = true_pose_.position - traj.evaluate(0.0).position;
}

void Simulator::clear_trajectory() { trajectory_.reset(); }

double Simulator::trajectory_remaining() const {
  if (!trajectory_) return 0.0;
  return std::max(0.0, trajectory_->total_duration() - clock_);
}

void Simulator::step(double dt, double yaw_rate_max) {
  if (!trajectory_) throw NoActiveTrajectory("step: no active trajectory");
  const double total = trajectory_->total_duration();
  clock_ = std::min(clock_ + dt, total);
  const TrajectorySample s = trajectory_->evaluate(clock_);

  const Vec3 old_pos = true_pose_.position;
  const double old_yaw = true_pose_.yaw;
  true_pose_.position = s.position + anchor_offset_;

  const double yaw_err = wrap_angle(s.yaw - true_pose_.yaw);
  const double max_step = yaw_rate_max * dt;
  true_pose_.yaw = wrap_angle(true_pose_.yaw +
                              std::clamp(yaw_err, -max_step, max_step));

  const Vec3 dp = true_pose_.position - old_pos;
  const double ds = dp.norm();
  const double dyaw = std::abs(wrap_angle(true_pose_.yaw - old_yaw));
  path_length_ += ds;
  yaw_travel_ += dyaw;

  // Drift random walk; draws happen every step so the stream is stable.
  const double n1 = gauss_(rng_), n2 = gauss_(rng_), n3 = gauss_(rng_),
               n4 = gauss_(rng_);
  const double sq_ds = std::sqrt(ds), sq_dyaw = std::sqrt(dyaw);
  drift_.dp.x() += drift_model_.sigma_xy * sq_ds * n1;
  drift_.dp.y() += drift_model_.sigma_xy * sq_ds * n2;
  drift_.dp.z() += drift_model_.sigma_z * sq_ds * n3;
  drift_.dyaw += drift_model_.sigma_yaw * sq_dyaw * n4;
  if (drift_model_.yaw_couple) {
    // Heading error rotates the perceived motion increment.
    drift_.dp += (yaw_rotation(drift_.dyaw) - Eigen::Matrix3d::Identity()) * dp;
  }

  time_ += dt;
  if (world_.collides(true_pose_.position, inflation_radius_)) {
    crash_flag_ = true;
  }
}

bool Simulator::apply_loop_closure(const Vec3& node_position, double node_yaw,
                                   const DriftState& node_drift,
                                   double residual_sigma,
                                   double arrival_radius, double yaw_tol) {
  // Node state mapped back to the true frame it was recorded in.
  const Vec3 node_true = node_position - node_drift.dp;
  const double node_true_yaw = wrap_angle(node_yaw - node_drift.dyaw);
  if ((true_pose_.position - node_true).norm() > arrival_radius) return false;
  if (std::abs(wrap_angle(true_pose_.yaw - node_true_yaw)) > yaw_tol) return false;

  drift_ = node_drift;
  if (residual_sigma > 0.0) {
    drift_.dp.x() += residual_sigma * gauss_(rng_);
    drift_.dp.y() += residual_sigma * gauss_(rng_);
    drift_.dp.z() += residual_sigma * gauss_(rng_);
  }
  return true;
}

}  // namespace real
