#include "real/voxel_map.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>

namespace real {
namespace {

constexpr std::array<std::array<int, 3>, 6> kFaceNeighbors = {{
    {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}};

}  // namespace

VoxelMap::VoxelMap(const Vec3& origin, const Vec3i& dims, double resolution,
                   double inflation_radius)
    : origin_(origin),
      dims_(dims),
      resolution_(resolution),
      inflation_radius_(inflation_radius) {
  if ((dims.array() <= 0).any() || resolution <= 0.0) {
    throw InvalidParams("voxel map dims and resolution must be positive");
  }
  cells_.assign(static_cast<size_t>(cell_count()), CellState::Unknown);
}

VoxelMap VoxelMap::for_bounds(const Aabb& bounds, double resolution,
                              double inflation_radius) {
  const Vec3 size = bounds.size();
  Vec3i dims;
  for (int i = 0; i < 3; ++i) {
    dims[i] = std::max(1, static_cast<int>(std::ceil(size[i] / resolution - 1e-9)));
  }
  return VoxelMap(bounds.min, dims, resolution, inflation_radius);
}

Vec3i VoxelMap::cell_of(const Vec3& p) const {
  Vec3i c;
  for (int i = 0; i < 3; ++i) {
    c[i] = static_cast<int>(std::floor((p[i] - origin_[i]) / resolution_));
    c[i] = std::clamp(c[i], 0, dims_[i] - 1);
  }
  return c;
}

CellState VoxelMap::state_at(const Vec3& p) const {
  if (!in_bounds(p)) throw PointOutOfBounds("state_at: point outside map");
  return state(linear_index(cell_of(p)));
}

VoxelMap::Coverage VoxelMap::coverage_stats() const {
  Coverage c;
  for (const CellState s : cells_) {
    if (s == CellState::Unknown) ++c.unknown;
    else if (s == CellState::Free) ++c.free;
    else ++c.occupied;
  }
  return c;
}

std::vector<int> VoxelMap::traverse(const Vec3& a, const Vec3& b) const {
  std::vector<int> out;
  const Vec3 d = b - a;
  const Aabb box = bounds();

  // Clip the segment parameter range to the grid.
  double t0 = 0.0, t1 = 1.0;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(d[i]) < 1e-15) {
      if (a[i] < box.min[i] || a[i] > box.max[i]) return out;
    } else {
      double lo = (box.min[i] - a[i]) / d[i];
      double hi = (box.max[i] - a[i]) / d[i];
      if (lo > hi) std::swap(lo, hi);
      t0 = std::max(t0, lo);
      t1 = std::min(t1, hi);
    }
  }
  if (t0 > t1) return out;

  const double len = d.norm();
  if (len < 1e-12) {
    if (in_bounds(a)) out.push_back(linear_index(cell_of(a)));
    return out;
  }

  // Amanatides-Woo walk from t0 to t1 along p(t) = a + t d.
  const Vec3 start = a + t0 * d;
  Vec3i cell = cell_of(start);
  Vec3i step;
  Vec3 t_max, t_delta;
  for (int i = 0; i < 3; ++i) {
    if (d[i] > 1e-15) {
      step[i] = 1;
      const double boundary = origin_[i] + (cell[i] + 1) * resolution_;
      t_max[i] = (boundary - a[i]) / d[i];
      t_delta[i] = resolution_ / d[i];
    } else if (d[i] < -1e-15) {
      step[i] = -1;
      const double boundary = origin_[i] + cell[i] * resolution_;
      t_max[i] = (boundary - a[i]) / d[i];
      t_delta[i] = -resolution_ / d[i];
    } else {
      step[i] = 0;
      t_max[i] = std::numeric_limits<double>::infinity();
      t_delta[i] = std::numeric_limits<double>::infinity();
    }
  }

  const double t_end = t1 + 1e-12;
  while (true) {
    out.push_back(linear_index(cell));
    int axis = 0;
    if (t_max[1] < t_max[axis]) axis = 1;
    if (t_max[2] < t_max[axis]) axis = 2;
    if (t_max[axis] > t_end) break;
    cell[axis] += step[axis];
    if (cell[axis] < 0 || cell[axis] >= dims_[axis]) break;
    t_max[axis] += t_delta[axis];
  }
  return out;
}

std::vector<int> VoxelMap::integrate_scan(const Pose& est_pose,
                                          const std::vector<Vec3>& points,
                                          double max_range) {
  if (!in_bounds(est_pose.position)) {
    throw PoseOutOfBounds("integrate_scan: sensor origin outside map");
  }
  const Eigen::Matrix3d rot = yaw_rotation(est_pose.yaw);
  const Vec3 sensor = est_pose.position;

  std::vector<int> free_cells, occ_cells;
  for (const Vec3& p_sensor : points) {
    const double range = p_sensor.norm();
    const bool hit = range < max_range - 1e-6;
    const Vec3 p_world = sensor + rot * p_sensor;
    std::vector<int> ray = traverse(sensor, p_world);
    if (ray.empty()) continue;
    int end_idx = -1;
    if (hit && in_bounds(p_world)) end_idx = linear_index(cell_of(p_world));
    for (const int idx : ray) {
      if (idx == end_idx) continue;
      free_cells.push_back(idx);
    }
    if (end_idx >= 0) occ_cells.push_back(end_idx);
  }

  std::sort(free_cells.begin(), free_cells.end());
  free_cells.erase(std::unique(free_cells.begin(), free_cells.end()),
                   free_cells.end());
  std::sort(occ_cells.begin(), occ_cells.end());
  occ_cells.erase(std::unique(occ_cells.begin(), occ_cells.end()),
                  occ_cells.end());

  std::vector<int> changed;
  for (const int idx : free_cells) {
    if (std::binary_search(occ_cells.begin(), occ_cells.end(), idx)) continue;
    if (occupied_persistence && state(idx) == CellState::Occupied) continue;
    if (state(idx) != CellState::Free) {
      set_state(idx, CellState::Free);
      changed.push_back(idx);
    }
  }
  for (const int idx : occ_cells) {
    if (state(idx) != CellState::Occupied) {
      set_state(idx, CellState::Occupied);
      changed.push_back(idx);
    }
  }

  // Updated region: changed cells plus their face neighbors, whose frontier
  // status may have flipped.
  std::vector<int> updated = changed;
  for (const int idx : changed) {
    const Vec3i c = cell_coords(idx);
    for (const auto& n : kFaceNeighbors) {
      const Vec3i q(c.x() + n[0], c.y() + n[1], c.z() + n[2]);
      if (valid_cell(q)) updated.push_back(linear_index(q));
    }
  }
  std::sort(updated.begin(), updated.end());
  updated.erase(std::unique(updated.begin(), updated.end()), updated.end());
  return updated;
}

bool VoxelMap::is_frontier_cell(int idx) const {
  if (state(idx) != CellState::Free) return false;
  const Vec3i c = cell_coords(idx);
  for (const auto& n : kFaceNeighbors) {
    const Vec3i q(c.x() + n[0], c.y() + n[1], c.z() + n[2]);
    if (valid_cell(q) && state(linear_index(q)) == CellState::Unknown) {
      return true;
    }
  }
  return false;
}

std::set<int> VoxelMap::extract_new_frontier(const std::vector<int>& updated) {
  std::set<int> region(updated.begin(), updated.end());
  for (const int idx : updated) {
    const Vec3i c = cell_coords(idx);
    for (const auto& n : kFaceNeighbors) {
      const Vec3i q(c.x() + n[0], c.y() + n[1], c.z() + n[2]);
      if (valid_cell(q)) region.insert(linear_index(q));
    }
  }

  frontier_new_.clear();
  for (const int idx : region) {
    if (is_frontier_cell(idx)) {
      frontier_new_.insert(idx);
      frontier_map_.insert(idx);
    } else {
      frontier_map_.erase(idx);
    }
  }
  return frontier_new_;
}

std::vector<FrontierCluster> VoxelMap::cluster_frontier() const {
  std::vector<FrontierCluster> clusters;
  std::set<int> pending = frontier_map_;
  int next_id = 0;
  while (!pending.empty()) {
    const int seed = *pending.begin();
    pending.erase(pending.begin());
    std::vector<int> members{seed};
    std::deque<int> queue{seed};
    while (!queue.empty()) {
      const Vec3i c = cell_coords(queue.front());
      queue.pop_front();
      for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dz = -1; dz <= 1; ++dz) {
            if (dx == 0 && dy == 0 && dz == 0) continue;
            const Vec3i q(c.x() + dx, c.y() + dy, c.z() + dz);
            if (!valid_cell(q)) continue;
            const int idx = linear_index(q);
            const auto it = pending.find(idx);
            if (it != pending.end()) {
              pending.erase(it);
              members.push_back(idx);
              queue.push_back(idx);
            }
          }
        }
      }
    }
    if (static_cast<int>(members.size()) < min_cluster_size) continue;
    std::sort(members.begin(), members.end());
    FrontierCluster cl;
    cl.id = next_id++;
    cl.size = static_cast<int>(members.size());
    Vec3 sum = Vec3::Zero();
    for (const int idx : members) sum += cell_center(idx);
    cl.centroid = sum / static_cast<double>(members.size());
    cl.cells = std::move(members);
    clusters.push_back(std::move(cl));
  }
  return clusters;
}

bool VoxelMap::is_point_free(const Vec3& p, double radius) const {
  const Aabb box = bounds();
  for (int i = 0; i < 3; ++i) {
    if (p[i] - radius < box.min[i] || p[i] + radius > box.max[i]) return false;
  }
  const Vec3i lo = cell_of(p - Vec3::Constant(radius));
  const Vec3i hi = cell_of(p + Vec3::Constant(radius));
  const Vec3i own = cell_of(p);
  for (int x = lo.x(); x <= hi.x(); ++x) {
    for (int y = lo.y(); y <= hi.y(); ++y) {
      for (int z = lo.z(); z <= hi.z(); ++z) {
        const Vec3i c(x, y, z);
        const int idx = linear_index(c);
        const bool within = (cell_center(idx) - p).norm() <= radius + 1e-12;
        if (!within && c != own) continue;
        if (state(idx) != CellState::Free) return false;
      }
    }
  }
  return true;
}

bool VoxelMap::is_segment_free(const Vec3& a, const Vec3& b,
                               double radius) const {
  if (radius < 0.0) radius = inflation_radius_;
  if (!in_bounds(a) || !in_bounds(b)) return false;
  const double len = (b - a).norm();
  const int n = std::max(1, static_cast<int>(std::ceil(len / (resolution_ / 2.0))));
  for (int k = 0; k <= n; ++k) {
    const Vec3 p = a + (static_cast<double>(k) / n) * (b - a);
    if (!is_point_free(p, radius)) return false;
  }
  return true;
}

bool VoxelMap::line_of_sight(const Vec3& a, const Vec3& b,
                             double unknown_slack) const {
  if (!in_bounds(a) || !in_bounds(b)) return false;
  for (const int idx : traverse(a, b)) {
    const CellState s = state(idx);
    if (s == CellState::Occupied) return false;
    if (s == CellState::Unknown &&
        (cell_center(idx) - b).norm() > unknown_slack) {
      return false;
    }
  }
  return true;
}

}  // namespace real
