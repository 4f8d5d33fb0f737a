#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "real/errors.hpp"
#include "real/geometry.hpp"

namespace real {

enum class CellState : std::uint8_t { Unknown = 0, Free = 1, Occupied = 2 };

struct FrontierCluster {
  int id{0};
  std::vector<int> cells;   // sorted linear indices
  Vec3 centroid{Vec3::Zero()};
  int size{0};
};

/// Fixed-resolution occupancy grid over a bounded volume with frontier
/// bookkeeping. Every cell is exactly one of Unknown/Free/Occupied.
class VoxelMap {
 public:
  VoxelMap(const Vec3& origin, const Vec3i& dims, double resolution,
           double inflation_radius = 0.3);

  /// Grid covering `bounds` (dims = ceil(size / resolution)).
  static VoxelMap for_bounds(const Aabb& bounds, double resolution,
                             double inflation_radius = 0.3);

  // --- geometry ---
  const Vec3& origin() const { return origin_; }
  const Vec3i& dims() const { return dims_; }
  double resolution() const { return resolution_; }
  double inflation_radius() const { return inflation_radius_; }
  long long cell_count() const {
    return static_cast<long long>(dims_.x()) * dims_.y() * dims_.z();
  }
  Aabb bounds() const {
    return {origin_, origin_ + resolution_ * dims_.cast<double>()};
  }
  bool in_bounds(const Vec3& p) const { return bounds().contains(p); }
  bool valid_cell(const Vec3i& c) const {
    return (c.array() >= 0).all() && (c.array() < dims_.array()).all();
  }
  int linear_index(const Vec3i& c) const {
    return c.x() + dims_.x() * (c.y() + dims_.y() * c.z());
  }
  Vec3i cell_coords(int idx) const {
    const int x = idx % dims_.x();
    const int y = (idx / dims_.x()) % dims_.y();
    const int z = idx / (dims_.x() * dims_.y());
    return {x, y, z};
  }
  /// Cell containing p; clamped to the grid for points on the max faces.
  Vec3i cell_of(const Vec3& p) const;
  Vec3 cell_center(int idx) const {
    const Vec3i c = cell_coords(idx);
    return origin_ + resolution_ * (c.cast<double>() + Vec3::Constant(0.5));
  }

  // --- state queries ---
  CellState state(int idx) const { return cells_[static_cast<size_t>(idx)]; }
  CellState state_at(const Vec3& p) const;  // throws PointOutOfBounds

  struct Coverage {
    long long unknown{0}, free{0}, occupied{0};
  };
  Coverage coverage_stats() const;

  // --- mutation ---
  void set_state(int idx, CellState s) { cells_[static_cast<size_t>(idx)] = s; }

  /// Carve free space along each sensor ray and mark hit endpoints occupied.
  /// Points are in the sensor frame of est_pose; a point at max_range is a
  /// miss. Occupied wins over Free inside one scan. Returns the sorted set of
  /// cells whose state or neighborhood changed.
  std::vector<int> integrate_scan(const Pose& est_pose,
                                  const std::vector<Vec3>& points,
                                  double max_range);  // throws PoseOutOfBounds

  /// Re-evaluate the frontier condition over the updated region, refresh
  /// F_map, and return (and store) F_new.
  std::set<int> extract_new_frontier(const std::vector<int>& updated);

  /// Partition F_map into 26-connected components; components smaller than
  /// min_cluster_size are dropped.
  std::vector<FrontierCluster> cluster_frontier() const;

  // --- free-space queries ---
  /// True iff every sample at resolution/2 spacing along [a,b], dilated by
  /// `radius` (inflation_radius when radius < 0), lies in Free cells.
  bool is_segment_free(const Vec3& a, const Vec3& b, double radius = -1.0) const;

  /// Dilated point check: the ball of `radius` around p (plus the containing
  /// cell) must be entirely Free and entirely inside the grid.
  bool is_point_free(const Vec3& p, double radius) const;

  /// Un-inflated visibility ray: Occupied always blocks; Unknown blocks only
  /// when farther than `unknown_slack` from the target b.
  bool line_of_sight(const Vec3& a, const Vec3& b, double unknown_slack) const;
  bool line_of_sight(const Vec3& a, const Vec3& b) const {
    return line_of_sight(a, b, resolution_);
  }

  /// Cells crossed by segment [a,b] clipped to the grid, in traversal order.
  std::vector<int> traverse(const Vec3& a, const Vec3& b) const;

  bool is_frontier_cell(int idx) const;

  const std::set<int>& frontier_map() const { return frontier_map_; }
  const std::set<int>& frontier_new() const { return frontier_new_; }

  int min_cluster_size{5};
  /// When true, a later pass-through cannot demote Occupied back to Free.
  bool occupied_persistence{false};

 private:
  Vec3 origin_;
  Vec3i dims_;
  double resolution_;
  double inflation_radius_;
  std::vector<CellState> cells_;
  std::set<int> frontier_map_;
  std::set<int> frontier_new_;
};

}  // namespace real
