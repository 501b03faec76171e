#pragma once

#include <vector>

#include "varibase/control/pid.hpp"
#include "varibase/episode/episode.hpp"
#include "varibase/sim/scene.hpp"

namespace varibase::episode {

struct ForestConfig {
  BaselineMode baseline = BaselineMode::with_gain(0.15);
  uint64_t seed = 1;
  int max_steps = 1200;
  double step_rate_hz = 20.0;

  Vec3 start{0.0, 0.0, 0.0};
  Vec3 goal{0.0, 0.0, 18.0};
  double goal_radius_m = 0.5;

  control::PidGains steering_gains;  // heading-tracking PID
  double v_max_m_s = 1.0;
  double v_creep_m_s = 0.2;
  double tau_safe_m = 0.3;          // braking corridor: stop when Z_close <= this
  double tau_release_factor = 1.3;  // resume when Z_close > factor * tau_safe
  /// Minimum creep time after the last stop trigger before resuming cruise;
  /// an obstacle that slid out of the narrow field of view is still nearby.
  double recovery_hold_s = 0.75;
  double clearance_depth_m = 2.0;   // free-space threshold
  double vehicle_size_m = 0.3;
  double neighborhood_margin = 1.5;
  double collision_radius_m = 0.12;
  double lowpass_cutoff_hz = 2.0;
  double slew_rate_m_s = 0.05;
  /// Speed confidence: clamp(1 - lambda * eps_z(Z)/Z, floor, 1) evaluated at
  /// min(Z_close, clearance); poor depth accuracy at braking range costs
  /// speed.
  double confidence_lambda = 2.0;
  double confidence_floor = 0.1;
  double matcher_max_disparity_px = 48.0;
  double far_depth_cap_m = 100.0;  // Z_close stand-in when nothing is in range
};

struct ForestStepRecord {
  double time_s = 0.0;
  Vec3 position = Vec3::Zero();
  Vec3 heading = Vec3::UnitZ();
  double commanded_baseline_m = 0.0;
  double achieved_baseline_m = 0.0;
  double w = 0.0;
  double z_close_m = 0.0;
  double z_close_lp_m = 0.0;
  double speed_m_s = 0.0;
  Vec3 velocity = Vec3::Zero();  // commanded velocity, world frame
  bool stopped = false;
  bool blocked = false;
};

struct ForestResult {
  Outcome outcome = Outcome::kTimeout;
  double completion_time_s = 0.0;
  std::vector<ForestStepRecord> records;
};

/// Goal-seeking flight through a cylinder field with the blended-steering
/// policy: per step the measured depth image yields the free-space direction
/// and Z_close; steering blends goal and free directions through the
/// (remapped) sigmoid weight; a PID steers the heading; Z_close <= tau_safe
/// stops the vehicle, which then creeps toward free space until clearance
/// recovers. The baseline follows b = K * lowpass(Z_close) through the
/// actuator. Deterministic for a given config.
ForestResult run_forest_episode(const sim::Scene& scene,
                                const io::RigFile& rig,
                                const ForestConfig& config);

}  // namespace varibase::episode
