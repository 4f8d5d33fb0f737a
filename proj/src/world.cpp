#include "real/world.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace real {

double World::obstacle_distance(const Vec3& p) const {
  double d = std::numeric_limits<double>::infinity();
  for (const Aabb& box : obstacles) d = std::min(d, box.distance(p));
  return d;
}

bool World::collides(const Vec3& p, double inflation) const {
  if (!bounds.contains(p)) return true;
  for (const Aabb& box : obstacles) {
    if (box.distance(p) < inflation) return true;
  }
  return false;
}

World parse_world(const std::string& text, const std::string& name,
                  double start_clearance) {
  World world;
  world.name = name;
  bool have_bounds = false, have_start = false;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    const auto fail = [&](const std::string& what) {
      throw ParseError(name + ":" + std::to_string(line_no) + ": " + what);
    };
    if (key == "bounds:") {
      Aabb b;
      if (!(ls >> b.min.x() >> b.min.y() >> b.min.z() >> b.max.x() >> b.max.y() >> b.max.z())) {
        fail("bounds needs 6 numbers");
      }
      if ((b.max.array() <= b.min.array()).any()) fail("bounds max must exceed min");
      world.bounds = b;
      have_bounds = true;
    } else if (key == "box:") {
      Aabb b;
      if (!(ls >> b.min.x() >> b.min.y() >> b.min.z() >> b.max.x() >> b.max.y() >> b.max.z())) {
        fail("box needs 6 numbers");
      }
      if ((b.max.array() <= b.min.array()).any()) fail("box max must exceed min");
      world.obstacles.push_back(b);
    } else if (key == "start:") {
      if (!(ls >> world.start.position.x() >> world.start.position.y() >>
            world.start.position.z() >> world.start.yaw)) {
        fail("start needs 4 numbers (x y z yaw)");
      }
      have_start = true;
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!have_bounds) throw ParseError(name + ": missing bounds line");
  if (!have_start) throw ParseError(name + ": missing start line");

  for (size_t i = 0; i < world.obstacles.size(); ++i) {
    if (!world.bounds.contains_box(world.obstacles[i])) {
      throw ValidationError(name + ": obstacle " + std::to_string(i) +
                            " extends outside bounds");
    }
  }
  if (!world.bounds.contains(world.start.position)) {
    throw ValidationError(name + ": start outside bounds");
  }
  if (world.obstacle_distance(world.start.position) < start_clearance) {
    throw ValidationError(name + ": start inside an inflated obstacle");
  }
  return world;
}

World load_world(const std::string& path, double start_clearance) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open world file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_world(ss.str(), path, start_clearance);
}

std::optional<double> ray_box_intersect(const Vec3& origin, const Vec3& dir,
                                        const Aabb& box) {
  double t0 = 0.0, t1 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(dir[i]) < 1e-15) {
      if (origin[i] < box.min[i] || origin[i] > box.max[i]) return std::nullopt;
    } else {
      double lo = (box.min[i] - origin[i]) / dir[i];
      double hi = (box.max[i] - origin[i]) / dir[i];
      if (lo > hi) std::swap(lo, hi);
      t0 = std::max(t0, lo);
      t1 = std::min(t1, hi);
      if (t0 > t1) return std::nullopt;
    }
  }
  return t0;
}

DepthScan raycast_depth(const Pose& true_pose, const World& world,
                        double fov_h, double fov_v, double r_max, int n_u,
                        int n_v) {
  DepthScan scan;
  scan.points.reserve(static_cast<size_t>(n_u) * n_v);
  scan.hits.reserve(static_cast<size_t>(n_u) * n_v);
  const Eigen::Matrix3d rot = yaw_rotation(true_pose.yaw);
  for (int v = 0; v < n_v; ++v) {
    const double elev = (n_v == 1) ? 0.0 : -fov_v / 2.0 + fov_v * v / (n_v - 1);
    for (int u = 0; u < n_u; ++u) {
      const double azim = (n_u == 1) ? 0.0 : -fov_h / 2.0 + fov_h * u / (n_u - 1);
      const Vec3 dir_sensor = direction(azim, elev);
      const Vec3 dir_world = rot * dir_sensor;
      double nearest = std::numeric_limits<double>::infinity();
      for (const Aabb& box : world.obstacles) {
        const auto t = ray_box_intersect(true_pose.position, dir_world, box);
        if (t && *t < nearest) nearest = *t;
      }
      const bool hit = nearest <= r_max;
      const double range = hit ? nearest : r_max;
      scan.points.push_back(range * dir_sensor);
      scan.hits.push_back(hit);
    }
  }
  return scan;
}

}  // namespace real
