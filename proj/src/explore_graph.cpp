#include "real/explore_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace real {

int ExploreGraph::add_node(const Vec3& position, double yaw,
                           const DriftState& drift, double created_at,
                           const VoxelMap& map, double r_max) {
  ExploreNode n;
  n.id = static_cast<int>(nodes_.size()) + 1;
  n.position = position;
  n.yaw = yaw;
  n.created_at = created_at;
  n.drift_snapshot = drift;
  nodes_.push_back(n);
  adjacency_.emplace_back();

  for (int k = 1; k < n.id; ++k) {
    const ExploreNode& other = node(k);
    const double dist = (other.position - position).norm();
    if (dist >= r_max) continue;
    if (!map.is_segment_free(position, other.position)) continue;
    adjacency_[static_cast<size_t>(n.id - 1)].push_back({k, dist});
    adjacency_[static_cast<size_t>(k - 1)].push_back({n.id, dist});
  }
  return n.id;
}

long long ExploreGraph::edge_count() const {
  long long total = 0;
  for (const auto& adj : adjacency_) total += static_cast<long long>(adj.size());
  return total / 2;
}

std::optional<std::pair<std::vector<int>, double>> ExploreGraph::astar(
    int from, int to) const {
  if (from < 1 || from > size() || to < 1 || to > size()) return std::nullopt;
  const Vec3 goal = node(to).position;
  const auto heuristic = [&](int id) {
    return (node(id).position - goal).norm();
  };

  struct Entry {
    double f;
    int id;
    bool operator>(const Entry& o) const {
      if (f != o.f) return f > o.f;
      return id > o.id;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
  std::vector<double> g(static_cast<size_t>(size()) + 1,
                        std::numeric_limits<double>::infinity());
  std::vector<int> parent(static_cast<size_t>(size()) + 1, 0);
  std::vector<bool> closed(static_cast<size_t>(size()) + 1, false);

  g[static_cast<size_t>(from)] = 0.0;
  open.push({heuristic(from), from});
  while (!open.empty()) {
    const Entry e = open.top();
    open.pop();
    if (closed[static_cast<size_t>(e.id)]) continue;
    closed[static_cast<size_t>(e.id)] = true;
    if (e.id == to) break;
    for (const GraphEdge& edge : edges_of(e.id)) {
      if (closed[static_cast<size_t>(edge.other)]) continue;
      const double cand = g[static_cast<size_t>(e.id)] + edge.length;
      if (cand < g[static_cast<size_t>(edge.other)]) {
        g[static_cast<size_t>(edge.other)] = cand;
        parent[static_cast<size_t>(edge.other)] = e.id;
        open.push({cand + heuristic(edge.other), edge.other});
      }
    }
  }
  if (!closed[static_cast<size_t>(to)]) return std::nullopt;

  std::vector<int> path;
  for (int id = to; id != 0; id = parent[static_cast<size_t>(id)]) {
    path.push_back(id);
    if (id == from) break;
  }
  std::reverse(path.begin(), path.end());
  if (path.front() != from) return std::nullopt;
  return std::make_pair(path, g[static_cast<size_t>(to)]);
}

std::optional<GlobalPlan> plan_global(const ExploreGraph& graph,
                                      const std::vector<FrontierCluster>& clusters,
                                      const VoxelMap& map, double zeta,
                                      int current_node) {
  std::optional<GlobalPlan> best;
  int best_size = 0;
  for (const FrontierCluster& cluster : clusters) {
    // Pairing node: nearest node with line of sight to the cluster centroid.
    int pair_node = 0;
    double pair_dist = std::numeric_limits<double>::infinity();
    for (const ExploreNode& n : graph.nodes()) {
      const double d = (n.position - cluster.centroid).norm();
      if (d >= pair_dist) continue;
      if (!map.line_of_sight(n.position, cluster.centroid)) continue;
      pair_node = n.id;
      pair_dist = d;
    }
    if (pair_node == 0) continue;

    const auto route = graph.astar(current_node, pair_node);
    if (!route) continue;
    GlobalPlan plan;
    plan.path = route->first;
    plan.target_cluster_id = cluster.id;
    plan.cluster_centroid = cluster.centroid;
    plan.total_length = route->second + pair_dist;
    plan.gain = cluster.size * std::exp(-zeta * plan.total_length);

    if (!best || plan.gain > best->gain ||
        (plan.gain == best->gain &&
         (cluster.size > best_size ||
          (cluster.size == best_size && cluster.id < best->target_cluster_id)))) {
      best = plan;
      best_size = cluster.size;
    }
  }
  return best;
}

bool abort_global(const std::set<int>& frontier_new, bool next_segment_free) {
  return !frontier_new.empty() || !next_segment_free;
}

}  // namespace real
