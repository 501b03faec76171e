#pragma once

#include "varibase/core/types.hpp"

namespace varibase::control {

struct PidGains {
  double kp = 0.8;
  double ki = 0.05;
  double kd = 0.2;
};

struct PidConfig {
  PidGains gains;
  double sample_period_s = 0.05;
  double integral_limit = 1.0;  // anti-windup clamp, per axis
};

/// Discrete 3-axis PID: trapezoidal integral, backward-difference
/// derivative. The first step after construction/reset reports zero
/// derivative (no error history yet). Throws std::invalid_argument for a
/// non-positive sample period.
class PidController {
 public:
  explicit PidController(const PidConfig& config);

  Vec3 step(const Vec3& error);
  void reset();

  const Vec3& integral() const { return integral_; }

 private:
  PidConfig config_;
  Vec3 integral_ = Vec3::Zero();
  Vec3 previous_error_ = Vec3::Zero();
  bool primed_ = false;
};

}  // namespace varibase::control
