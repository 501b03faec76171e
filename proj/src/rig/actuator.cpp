#include "varibase/rig/actuator.hpp"

#include <algorithm>

namespace varibase::rig {

CommandResult command_baseline(const ActuatorModel& model, double target_m,
                               Rng& rng) {
  CommandResult out;
  double t = target_m;
  if (t < model.min_baseline_m) {
    t = model.min_baseline_m;
    out.clamped = true;
  } else if (t > model.max_baseline_m) {
    t = model.max_baseline_m;
    out.clamped = true;
  }
  const double eta =
      model.relative_noise > 0.0
          ? rng.uniform(-model.relative_noise, model.relative_noise)
          : 0.0;
  out.achieved_m = t * (1.0 + eta);
  return out;
}

CommandResult command_baseline(const ActuatorModel& model, double target_m,
                               uint64_t seed) {
  Rng rng(seed);
  return command_baseline(model, target_m, rng);
}

}  // namespace varibase::rig
