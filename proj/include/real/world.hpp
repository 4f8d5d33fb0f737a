#pragma once

#include <optional>
#include <string>
#include <vector>

#include "real/errors.hpp"
#include "real/geometry.hpp"

namespace real {

/// Ground-truth environment: bounded volume with axis-aligned box obstacles.
struct World {
  Aabb bounds;
  std::vector<Aabb> obstacles;
  Pose start;
  std::string name{"world"};

  /// Distance from p to the nearest obstacle (inf when there are none).
  double obstacle_distance(const Vec3& p) const;
  bool collides(const Vec3& p, double inflation) const;
};

/// Parse a `bounds:`/`box:`/`start:` key-value world file. Throws ParseError
/// on malformed lines and ValidationError on inconsistent geometry (obstacle
/// outside bounds, start inside an inflated obstacle).
World load_world(const std::string& path, double start_clearance = 0.3);
World parse_world(const std::string& text, const std::string& name,
                  double start_clearance = 0.3);

/// Nearest hit of ray origin+t*dir against one box, exact slab method.
/// Returns entry distance in [0, inf) or nothing when the ray misses.
std::optional<double> ray_box_intersect(const Vec3& origin, const Vec3& dir,
                                        const Aabb& box);

struct DepthScan {
  std::vector<Vec3> points;  // sensor frame
  std::vector<bool> hits;    // false = clipped at max range
};

/// Cast a uniform angular grid of n_u x n_v rays over fov_h x fov_v from the
/// true pose (yaw only; the sensor is mounted level). Each ray returns the
/// nearest obstacle intersection <= r_max or the r_max point flagged miss.
DepthScan raycast_depth(const Pose& true_pose, const World& world,
                        double fov_h, double fov_v, double r_max, int n_u,
                        int n_v);

}  // namespace real
