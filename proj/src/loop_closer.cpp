#include "real/loop_closer.hpp"

#include <cmath>

namespace real {

double loop_likelihood(int current_index, int prior_index, double current_yaw,
                       double prior_yaw, double v_max,
                       const LoopParams& params) {
  const int gap = std::abs(current_index - prior_index);
  if (static_cast<double>(gap) < params.tau(v_max)) return 0.0;
  return std::exp(-std::abs(wrap_angle(current_yaw - prior_yaw)));
}

std::vector<int> loop_candidates(const ExploreNode& current,
                                 const ExploreGraph& graph, double v_max,
                                 const LoopParams& params) {
  std::vector<int> out;
  for (const ExploreNode& n : graph.nodes()) {
    if (n.id >= current.id) continue;
    if ((n.position - current.position).norm() > params.r_max) continue;
    const double f = loop_likelihood(current.id, n.id, current.yaw, n.yaw,
                                     v_max, params);
    if (f > params.kappa(v_max)) out.push_back(n.id);
  }
  return out;
}

std::optional<LoopDecision> select_loop(const std::vector<int>& candidates,
                                        const ExploreNode& current,
                                        const ExploreGraph& graph, double v_max,
                                        const LoopParams& params) {
  if (candidates.empty()) return std::nullopt;

  int best_id = 0;
  double best_f = -1.0;
  for (const int id : candidates) {
    const ExploreNode& n = graph.node(id);
    const double f = loop_likelihood(current.id, n.id, current.yaw, n.yaw,
                                     v_max, params);
    const int gap = current.id - id;
    const int best_gap = current.id - best_id;
    if (f > best_f || (f == best_f && (gap > best_gap ||
                                       (gap == best_gap && id < best_id)))) {
      best_f = f;
      best_id = id;
    }
  }

  const auto route = graph.astar(current.id, best_id);
  if (!route || route->first.size() < 2) return std::nullopt;

  LoopDecision d;
  d.target_id = best_id;
  d.likelihood = best_f;
  d.index_gap = current.id - best_id;
  d.yaw_delta = wrap_angle(current.yaw - graph.node(best_id).yaw);
  d.path = route->first;
  std::vector<Vec3> waypoints;
  waypoints.reserve(d.path.size());
  for (const int id : d.path) waypoints.push_back(graph.node(id).position);
  d.trajectory = refine_path(waypoints, v_max);
  d.terminal_yaw = graph.node(best_id).yaw;
  d.trajectory.fixed_yaw = d.terminal_yaw;
  return d;
}

}  // namespace real
