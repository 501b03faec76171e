#pragma once

#include <cstdint>

#include "varibase/core/random.hpp"

namespace varibase::rig {

/// Linear-actuator model: stroke limits in meters plus a bounded relative
/// positioning error (achieved = target * (1 + eta), eta uniform in
/// [-noise, +noise]). The uniform half-width matches the reported maximum
/// calibration error; repeated samples regress onto a slope-1 line.
struct ActuatorModel {
  double min_baseline_m = 0.1;
  double max_baseline_m = 0.3;
  double relative_noise = 0.007;
  int samples_per_command = 10;
};

struct CommandResult {
  double achieved_m = 0.0;
  bool clamped = false;
};

/// Drives the actuator to `target_m`. Targets outside the stroke are clamped
/// to the nearest limit (mirrors the physical stop) and flagged.
CommandResult command_baseline(const ActuatorModel& model, double target_m,
                               Rng& rng);

/// Seed convenience wrapper for one-shot calls.
CommandResult command_baseline(const ActuatorModel& model, double target_m,
                               uint64_t seed);

}  // namespace varibase::rig
