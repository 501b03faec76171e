#include "varibase/control/blend.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace varibase::control {

double blend_weight(double z_close_m) {
  if (!(z_close_m > 0.0)) {
    throw std::invalid_argument("blend_weight: Z_close must be > 0");
  }
  return 1.0 / (1.0 + std::exp(-1.0 / z_close_m));
}

double blend_weight_remapped(double z_close_m) {
  return 2.0 * blend_weight(z_close_m) - 1.0;
}

std::optional<Vec3> blend_direction(const Vec3& v_goal, const Vec3& v_free,
                                    double w) {
  if (w < 0.0 || w > 1.0) {
    throw std::invalid_argument("blend_direction: w must be in [0, 1]");
  }
  const Vec3 blended = (1.0 - w) * v_goal + w * v_free;
  const double norm = blended.norm();
  if (norm < 1e-9) return std::nullopt;
  return blended / norm;
}

double baseline_law(double z_ref_m, double gain, double min_baseline_m,
                    double max_baseline_m) {
  if (!(z_ref_m > 0.0) || !(gain > 0.0)) {
    throw std::invalid_argument("baseline_law: z_ref and gain must be > 0");
  }
  return std::clamp(gain * z_ref_m, min_baseline_m, max_baseline_m);
}

double slew_limit(double previous_m, double target_m, double max_rate_m_s,
                  double dt_s) {
  const double max_step = max_rate_m_s * dt_s;
  return previous_m + std::clamp(target_m - previous_m, -max_step, max_step);
}

LowPassFilter::LowPassFilter(double cutoff_hz, double sample_period_s)
    : alpha_(1.0 - std::exp(-2.0 * M_PI * cutoff_hz * sample_period_s)) {
  if (!(cutoff_hz > 0.0) || !(sample_period_s > 0.0)) {
    throw std::invalid_argument("LowPassFilter: cutoff and period must be > 0");
  }
}

double LowPassFilter::update(double x) {
  if (!primed_) {
    value_ = x;
    primed_ = true;
  } else {
    value_ += alpha_ * (x - value_);
  }
  return value_;
}

void LowPassFilter::reset() {
  value_ = 0.0;
  primed_ = false;
}

}  // namespace varibase::control
