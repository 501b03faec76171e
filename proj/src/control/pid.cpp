#include "varibase/control/pid.hpp"

#include <stdexcept>

namespace varibase::control {

PidController::PidController(const PidConfig& config) : config_(config) {
  if (!(config.sample_period_s > 0.0)) {
    throw std::invalid_argument("PidController: sample period must be > 0");
  }
}

Vec3 PidController::step(const Vec3& error) {
  const double dt = config_.sample_period_s;
  if (!primed_) {
    previous_error_ = error;
    primed_ = true;
  }
  integral_ += 0.5 * dt * (error + previous_error_);
  integral_ = integral_.cwiseMax(-config_.integral_limit)
                  .cwiseMin(config_.integral_limit);
  const Vec3 derivative = (error - previous_error_) / dt;
  previous_error_ = error;
  return config_.gains.kp * error + config_.gains.ki * integral_ +
         config_.gains.kd * derivative;
}

void PidController::reset() {
  integral_ = Vec3::Zero();
  previous_error_ = Vec3::Zero();
  primed_ = false;
}

}  // namespace varibase::control
