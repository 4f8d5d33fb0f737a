#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "real/errors.hpp"
#include "real/loop_closer.hpp"
#include "real/sim.hpp"

namespace real {

enum class PlannerKind { Real, NearestFrontier };

/// Everything a mission run needs, defaults matching the small-environment
/// parameter set (fov 90x67.5 deg, r_max 6, l_traj 2.5, rho 0.3).
struct MissionConfig {
  std::string world_path;
  std::uint64_t seed{1};

  double v_max{1.5};
  double yaw_rate_max{1.0};
  double r_max{6.0};
  double l_traj{2.5};
  double rho_oct{0.3};
  double fov_h{90.0 * M_PI / 180.0};
  double fov_v{67.5 * M_PI / 180.0};
  int n_pitch{5};
  int n_yaw{7};
  int n_yaw2{7};

  double lambda_gain{1.0};
  double gamma_gain{1.0};
  double zeta{0.25};

  LoopParams loop;
  bool lc_enabled{true};
  double lc_cooldown{10.0};
  double lc_residual_sigma{0.0};
  double arrival_radius{0.5};
  double yaw_tol{0.3};

  DriftModel drift;
  double inflation_radius{0.3};
  int min_cluster_size{5};

  double dt{0.02};
  double dt_plan{0.33};
  double t_node{1.0};
  double sensor_period{0.2};
  int rays_u{64};
  int rays_v{48};
  double stuck_timeout{300.0};
  double stuck_fraction{0.001};
  double max_sim_time{3600.0};

  PlannerKind planner{PlannerKind::Real};
  bool global_enabled{true};
  bool debug_scores{false};
  double export_sample_period{0.02};

  void validate() const;  // throws ConfigError
};

/// Flat `key: value` config file with `#` comments; keys mirror the paper's
/// parameter names (v_max, rho_oct, r_max, l_traj, psi_dot_max, ...).
MissionConfig load_config(const std::string& path, MissionConfig base = {});
MissionConfig parse_config(const std::string& text, const std::string& name,
                           MissionConfig base = {});
void apply_config_entry(MissionConfig& cfg, const std::string& key,
                        const std::string& value, const std::string& where);

}  // namespace real
