#pragma once

#include <vector>

#include "varibase/control/gap.hpp"
#include "varibase/episode/episode.hpp"
#include "varibase/sim/scene.hpp"

namespace varibase::episode {

struct GapConfig {
  BaselineMode baseline = BaselineMode::with_gain(0.2);
  uint64_t seed = 1;
  int max_steps = 400;
  double step_rate_hz = 20.0;

  Vec3 start{0.0, 0.0, 0.0};
  double approach_speed_m_s = 0.5;
  double lateral_gain = 1.2;        // P gain on the image-alignment error
  double max_lateral_speed_m_s = 0.6;
  /// Alignment errors within this many pixels are ignored: the coordinate
  /// median is integer-quantized, and integrating its +/-1 px bias through
  /// the proportional loop would otherwise walk the vehicle off the gap.
  double alignment_deadband_px = 2.0;
  double lowpass_cutoff_hz = 1.0;   // on the median contour depth
  double slew_rate_m_s = 0.05;
  double matcher_max_disparity_px = 64.0;
  control::GapConfig detector;
};

struct GapStepRecord {
  double time_s = 0.0;
  Vec3 position = Vec3::Zero();
  double commanded_baseline_m = 0.0;
  double achieved_baseline_m = 0.0;
  double median_contour_depth_m = 0.0;
  Vec2 safest_point_px = Vec2::Zero();
  bool gap_visible = false;
  bool re_detected = false;
};

struct GapResult {
  Outcome outcome = Outcome::kTimeout;   // kCompleted = traversed the aperture
  double completion_time_s = 0.0;
  Vec3 crossing_point = Vec3::Zero();
  std::vector<GapStepRecord> records;
};

/// Approach-and-traverse: constant forward speed toward the apertured wall;
/// lateral velocity aligns the image center with the safest point from the
/// depth clustering; the baseline follows b = K * lowpass(median contour
/// depth), shrinking as the gap nears. The episode ends when the wall plane
/// is crossed (through the aperture: kCompleted; into the wall: kCollided).
GapResult run_gap_episode(const sim::Scene& scene, const io::RigFile& rig,
                          const GapConfig& config);

}  // namespace varibase::episode
