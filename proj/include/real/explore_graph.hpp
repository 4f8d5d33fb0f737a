#pragma once

#include <optional>
#include <set>
#include <vector>

#include "real/geometry.hpp"
#include "real/voxel_map.hpp"

namespace real {

struct ExploreNode {
  int id{0};  // consecutive from 1
  Vec3 position{Vec3::Zero()};
  double yaw{0.0};
  double created_at{0.0};
  DriftState drift_snapshot;
};

struct GraphEdge {
  int other{0};
  double length{0.0};
};

struct GlobalPlan {
  std::vector<int> path;  // node ids, current first
  int target_cluster_id{0};
  Vec3 cluster_centroid{Vec3::Zero()};
  double gain{0.0};
  double total_length{0.0};  // A* cost plus the node-to-centroid hop
};

/// Undirected node/edge graph built during flight. Edge weights are the
/// Euclidean node distances; edges exist only between nodes whose straight
/// segment was free at creation time and closer than r_max.
class ExploreGraph {
 public:
  /// Append a node and connect it to every visible node within r_max.
  int add_node(const Vec3& position, double yaw, const DriftState& drift,
               double created_at, const VoxelMap& map, double r_max);

  /// Minimum-length path by A* with the Euclidean heuristic; ties in the
  /// priority queue break toward the smaller node id. Nothing on disconnect.
  std::optional<std::pair<std::vector<int>, double>> astar(int from, int to) const;

  const std::vector<ExploreNode>& nodes() const { return nodes_; }
  const ExploreNode& node(int id) const { return nodes_[static_cast<size_t>(id - 1)]; }
  const std::vector<GraphEdge>& edges_of(int id) const {
    return adjacency_[static_cast<size_t>(id - 1)];
  }
  int size() const { return static_cast<int>(nodes_.size()); }
  long long edge_count() const;
  bool empty() const { return nodes_.empty(); }

 private:
  std::vector<ExploreNode> nodes_;
  std::vector<std::vector<GraphEdge>> adjacency_;
};

/// Best global path by the gain S * exp(-zeta * l_tot) over all frontier
/// clusters. Each cluster pairs with its nearest line-of-sight node; l_tot is
/// the A* cost to that node plus the final node-to-centroid hop. Nothing when
/// no cluster is pairable/reachable.
std::optional<GlobalPlan> plan_global(const ExploreGraph& graph,
                                      const std::vector<FrontierCluster>& clusters,
                                      const VoxelMap& map, double zeta,
                                      int current_node);

/// Abort the tracked global plan as soon as new frontier appears or the
/// upcoming refined segment stops being free.
bool abort_global(const std::set<int>& frontier_new, bool next_segment_free);

}  // namespace real
