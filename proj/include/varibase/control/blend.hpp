#pragma once

#include <optional>

#include "varibase/core/types.hpp"

namespace varibase::control {

/// Obstacle-proximity steering weight w = 1/(1 + e^(-1/Z_close)).
/// Strictly decreasing in Z_close with range (0.5, 1) over (0, inf):
/// w -> 1 as the nearest depth vanishes, w -> 0.5 at infinite clearance.
/// Throws std::invalid_argument when z_close <= 0.
double blend_weight(double z_close_m);

/// Affine remap w' = 2w - 1 of blend_weight onto (0, 1), so free space
/// drives the weight to zero. Episodes use this variant.
double blend_weight_remapped(double z_close_m);

/// Steering blend (1-w)*v_goal + w*v_free, renormalized to unit length.
/// Returns nullopt when the blend is degenerate (norm < 1e-9, antiparallel
/// inputs at w = 0.5); callers fall back to v_free.
std::optional<Vec3> blend_direction(const Vec3& v_goal, const Vec3& v_free,
                                    double w);

/// b = clamp(gain * z_ref, lo, hi). Shared by all three policies with
/// z_ref = low-passed Z_close, median contour depth, or median object depth.
double baseline_law(double z_ref_m, double gain, double min_baseline_m,
                    double max_baseline_m);

/// Rate-limits a baseline command to the actuator stroke speed.
double slew_limit(double previous_m, double target_m, double max_rate_m_s,
                  double dt_s);

/// First-order low-pass y += a (x - y), a = 1 - exp(-2 pi fc dt).
class LowPassFilter {
 public:
  LowPassFilter(double cutoff_hz, double sample_period_s);

  double update(double x);
  double value() const { return value_; }
  bool primed() const { return primed_; }
  void reset();

 private:
  double alpha_;
  double value_ = 0.0;
  bool primed_ = false;
};

}  // namespace varibase::control
