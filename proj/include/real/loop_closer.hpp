#pragma once

#include <optional>
#include <vector>

#include "real/explore_graph.hpp"
#include "real/min_snap.hpp"

namespace real {

/// Likelihood shaping for the loop gate: tau(v) = c_tau / v gates the node
/// index gap, kappa(v) = kappa0 + kappa1 * v is the acceptance threshold.
struct LoopParams {
  double c_tau{30.0};   // node * (m/s)
  double kappa0{0.2};
  double kappa1{0.08};  // s/m
  double r_max{6.0};

  double tau(double v) const { return c_tau / v; }
  double kappa(double v) const { return kappa0 + kappa1 * v; }
};

struct LoopDecision {
  int target_id{0};
  double likelihood{0.0};
  int index_gap{0};
  double yaw_delta{0.0};
  std::vector<int> path;  // node ids from current to target
  Trajectory trajectory;  // refined, terminal yaw overridden
  double terminal_yaw{0.0};
};

/// Loop likelihood between the current node K and a prior node k':
/// H(|K - k'| - tau(v)) * exp(-|wrap(yaw_K - yaw_k')|), in [0, 1].
double loop_likelihood(int current_index, int prior_index, double current_yaw,
                       double prior_yaw, double v_max, const LoopParams& params);

/// Prior nodes within r_max whose likelihood clears kappa(v_max).
std::vector<int> loop_candidates(const ExploreNode& current,
                                 const ExploreGraph& graph, double v_max,
                                 const LoopParams& params);

/// Pick the maximum-likelihood candidate (ties: larger index gap, then
/// smaller id), route to it with A*, and refine the node path into a
/// trajectory whose yaw is pinned to the target node's stored yaw.
std::optional<LoopDecision> select_loop(const std::vector<int>& candidates,
                                        const ExploreNode& current,
                                        const ExploreGraph& graph, double v_max,
                                        const LoopParams& params);

}  // namespace real
