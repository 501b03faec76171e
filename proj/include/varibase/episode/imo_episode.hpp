#pragma once

#include <vector>

#include "varibase/control/imo.hpp"
#include "varibase/episode/episode.hpp"
#include "varibase/sim/scene.hpp"

namespace varibase::episode {

struct ImoConfig {
  BaselineMode baseline = BaselineMode::with_gain(0.12);
  uint64_t seed = 1;
  int max_steps = 460;
  double step_rate_hz = 20.0;

  Vec3 observer_position{0.0, 0.0, 0.0};
  double slew_rate_m_s = 0.05;
  double visibility_disparity_px = 64.0;  // shared-view / matcher bound
  control::ImoDetectConfig detector{0.012, 0.0, 12};
  control::ImoTrackConfig tracker;
};

struct ImoStepRecord {
  double time_s = 0.0;
  control::TrackStatus status = control::TrackStatus::kNoDepth;
  bool detected = false;
  double commanded_baseline_m = 0.0;
  double achieved_baseline_m = 0.0;
  double measured_depth_m = 0.0;
  double true_depth_m = 0.0;
  Vec3 estimated_position = Vec3::Zero();
  Vec3 true_position = Vec3::Zero();
};

struct ImoResult {
  std::vector<ImoStepRecord> records;
  control::ImoTrack track;

  int tracked_steps() const;
  /// Steps where the object was detected but the stereo track failed
  /// (out of the shared view near range, or past the accuracy bound far
  /// out) — the dropout segments of a fixed-baseline arm.
  int lost_steps() const;
  /// Mean |estimated - true| position error over tracked steps (3D).
  double mean_tracked_error() const;
};

/// Static observer, receding cube: per step the moving box is detected from
/// consecutive true-depth frames (residual scene flow), its 3D position is
/// estimated from quantized-disparity depth at the current baseline, and the
/// baseline law follows the measured median object depth. Track losses obey
/// the accuracy and visibility bounds.
ImoResult run_imo_episode(const sim::Scene& scene, const io::RigFile& rig,
                          const ImoConfig& config);

}  // namespace varibase::episode
