#pragma once

#include <optional>
#include <set>

#include "real/min_snap.hpp"
#include "real/voxel_map.hpp"

namespace real {

/// Collision matrix, frontier matrix, and their Hadamard product, indexed
/// (pitch i, yaw j) over the first-step fan.
struct ScoreMatrix {
  Eigen::MatrixXd lambda;  // collision score, starts at 0
  Eigen::MatrixXd gamma;   // frontier score, starts at 1
  Eigen::MatrixXd g;       // lambda (.) gamma

  double max() const { return g.size() ? g.maxCoeff() : 0.0; }
};

enum class GoGlobalReason { DeadEndOrRevisit, Collision };

struct LocalDecision {
  bool track{false};
  int i{0}, j{0};
  Trajectory first_step;  // world frame, only set when track
  std::optional<GoGlobalReason> go_global;
};

/// Margin added to the inflation radius for trajectory collision checks so a
/// coarse pass implies a dense re-check at the bare inflation radius.
double trajectory_check_margin(const VoxelMap& map);

/// True iff the segment, placed in the world, clears the map with the
/// trajectory margin at the spec sampling cadence (T/20 and half a cell,
/// whichever is finer).
bool trajectory_segment_free(const Polynomial7& world_segment,
                             const VoxelMap& map, double arc_length_hint = -1.0);

/// Fill lambda/gamma/g for the fan placed at `pose` (translation plus yaw).
/// First-step collisions zero a cell; each free second step adds lambda_gain;
/// each F_new cell adds gamma_gain to its nearest first-step endpoint.
ScoreMatrix score_fan(const PeacockSet& peacock, const Pose& pose,
                      const VoxelMap& map, const std::set<int>& frontier_new,
                      double lambda_gain, double gamma_gain);

/// Argmax of g; ties prefer the smallest angular deviation from the current
/// heading cell, then lowest i, then lowest j. Track carries the chosen
/// first step transformed to the world frame.
LocalDecision select_best(const ScoreMatrix& scores, const PeacockSet& peacock,
                          const Pose& pose, int heading_i, int heading_j);

/// Trigger conditions for global exploration: (a) no new frontier and no
/// F_map cell visible in the sensor frustum, (b) no new frontier and a fully
/// blocked fan.
std::optional<GoGlobalReason> should_go_global(
    const std::set<int>& frontier_new, const ScoreMatrix& scores,
    const VoxelMap& map, const Pose& pose, double fov_h, double fov_v,
    double r_max);

/// Frustum + line-of-sight visibility of one map cell from the sensor pose.
bool cell_visible(const VoxelMap& map, int cell, const Pose& pose,
                  double fov_h, double fov_v, double r_max);

}  // namespace real
