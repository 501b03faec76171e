#pragma once

#include <string>

#include "varibase/core/random.hpp"
#include "varibase/io/rig_io.hpp"

namespace varibase::episode {

/// Baseline policy of one comparative arm.
struct BaselineMode {
  bool variable = false;
  double fixed_baseline_m = 0.1;  // fixed mode
  double gain = 0.12;             // variable mode: b = gain * z_ref

  static BaselineMode fixed(double baseline_m) {
    return {false, baseline_m, 0.0};
  }
  static BaselineMode with_gain(double gain) { return {true, 0.0, gain}; }

  /// Parses "fixed:<meters>" or "variable:<gain>"; throws ConfigError.
  static BaselineMode parse(const std::string& text);
  std::string describe() const;
};

/// Tracks commanded/achieved baseline across an episode. Fixed arms hold a
/// baseline they were calibrated at (no actuation error); the variable arm
/// commands the baseline law through the slew limit and the noisy actuator,
/// and assumes its command as the calibration operating point (the
/// forward-kinematics estimate; the achieved value generates the imagery).
class BaselineController {
 public:
  BaselineController(const BaselineMode& mode, const io::RigFile& rig,
                     double slew_rate_m_s, double initial_baseline_m,
                     uint64_t seed);

  /// Applies the baseline law for z_ref (variable mode only) and actuates.
  void command(double z_ref_m, double dt_s);

  double commanded() const { return commanded_; }   // what the system assumes
  double achieved() const { return achieved_; }     // physical truth
  const BaselineMode& mode() const { return mode_; }

 private:
  BaselineMode mode_;
  io::RigFile rig_;
  double slew_rate_;
  double commanded_;
  double achieved_;
  Rng rng_;
};

enum class Outcome { kReachedGoal, kCollided, kTimeout, kCompleted };

const char* outcome_name(Outcome o);

}  // namespace varibase::episode
