#include "real/local_planner.hpp"

#include <cmath>
#include <limits>

namespace real {

double trajectory_check_margin(const VoxelMap& map) {
  return map.resolution() / 4.0;
}

bool trajectory_segment_free(const Polynomial7& world_segment,
                             const VoxelMap& map, double arc_length_hint) {
  const double arc = arc_length_hint > 0.0 ? arc_length_hint
                                           : world_segment.arc_length();
  const double spatial = map.resolution() / 2.0;
  const int n = std::max(20, static_cast<int>(std::ceil(arc / spatial)));
  const double radius = map.inflation_radius() + trajectory_check_margin(map);
  for (int k = 0; k <= n; ++k) {
    const double t = world_segment.duration * k / n;
    if (!map.is_point_free(world_segment.position(t), radius)) return false;
  }
  return true;
}

ScoreMatrix score_fan(const PeacockSet& peacock, const Pose& pose,
                      const VoxelMap& map, const std::set<int>& frontier_new,
                      double lambda_gain, double gamma_gain) {
  ScoreMatrix s;
  s.lambda = Eigen::MatrixXd::Zero(peacock.n_pitch, peacock.n_yaw);
  s.gamma = Eigen::MatrixXd::Ones(peacock.n_pitch, peacock.n_yaw);

  const Eigen::Matrix3d rot = yaw_rotation(pose.yaw);
  for (int i = 0; i < peacock.n_pitch; ++i) {
    for (int j = 0; j < peacock.n_yaw; ++j) {
      const int idx = peacock.flat(i, j);
      const Polynomial7 first =
          peacock.first_steps[static_cast<size_t>(idx)].transformed(
              rot, pose.position);
      if (!trajectory_segment_free(
              first, map, peacock.first_arc_len[static_cast<size_t>(idx)])) {
        continue;  // lambda stays 0
      }
      double acc = 0.0;
      const auto& seconds = peacock.second_steps[static_cast<size_t>(idx)];
      const auto& lens = peacock.second_arc_len[static_cast<size_t>(idx)];
      for (size_t b = 0; b < seconds.size(); ++b) {
        const Polynomial7 second = seconds[b].transformed(rot, pose.position);
        if (trajectory_segment_free(second, map, lens[b])) acc += lambda_gain;
      }
      s.lambda(i, j) = acc;
    }
  }

  // Each new frontier cell pulls its nearest first-step endpoint.
  for (const int cell : frontier_new) {
    const Vec3 p = map.cell_center(cell);
    int best_i = 0, best_j = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < peacock.n_pitch; ++i) {
      for (int j = 0; j < peacock.n_yaw; ++j) {
        const Vec3 end = pose.position + rot * peacock.endpoint(i, j);
        const double d = (p - end).norm();
        if (d < best_d) {
          best_d = d;
          best_i = i;
          best_j = j;
        }
      }
    }
    s.gamma(best_i, best_j) += gamma_gain;
  }

  s.g = s.lambda.cwiseProduct(s.gamma);
  return s;
}

LocalDecision select_best(const ScoreMatrix& scores, const PeacockSet& peacock,
                          const Pose& pose, int heading_i, int heading_j) {
  LocalDecision d;
  const double best = scores.max();
  if (!(best > 0.0)) {
    d.go_global = GoGlobalReason::Collision;
    return d;
  }

  const Vec3 heading = peacock.ray_direction(heading_i, heading_j);
  int sel_i = -1, sel_j = -1;
  double sel_dev = 0.0;
  for (int i = 0; i < peacock.n_pitch; ++i) {
    for (int j = 0; j < peacock.n_yaw; ++j) {
      if (scores.g(i, j) != best) continue;
      const double dev = std::acos(std::clamp(
          heading.dot(peacock.ray_direction(i, j)), -1.0, 1.0));
      if (sel_i < 0 || dev < sel_dev - 1e-12) {
        sel_i = i;
        sel_j = j;
        sel_dev = dev;
      }
    }
  }

  d.track = true;
  d.i = sel_i;
  d.j = sel_j;
  Trajectory traj;
  traj.segments.push_back(peacock.first(sel_i, sel_j)
                              .transformed(yaw_rotation(pose.yaw), pose.position));
  d.first_step = traj;
  return d;
}

bool cell_visible(const VoxelMap& map, int cell, const Pose& pose,
                  double fov_h, double fov_v, double r_max) {
  const Vec3 center = map.cell_center(cell);
  const Vec3 rel = yaw_rotation(-pose.yaw) * (center - pose.position);
  const double range = rel.norm();
  if (range > r_max) return false;
  if (rel.x() <= 0.0) return false;
  if (std::abs(std::atan2(rel.y(), rel.x())) > fov_h / 2.0) return false;
  if (std::abs(std::atan2(rel.z(), rel.head<2>().norm())) > fov_v / 2.0) {
    return false;
  }
  return map.line_of_sight(pose.position, center);
}

std::optional<GoGlobalReason> should_go_global(
    const std::set<int>& frontier_new, const ScoreMatrix& scores,
    const VoxelMap& map, const Pose& pose, double fov_h, double fov_v,
    double r_max) {
  if (!frontier_new.empty()) return std::nullopt;
  bool any_visible = false;
  for (const int cell : map.frontier_map()) {
    if (cell_visible(map, cell, pose, fov_h, fov_v, r_max)) {
      any_visible = true;
      break;
    }
  }
  if (!any_visible) return GoGlobalReason::DeadEndOrRevisit;
  if (!(scores.max() > 0.0)) return GoGlobalReason::Collision;
  return std::nullopt;
}

}  // namespace real
