#include "varibase/episode/episode.hpp"

#include <algorithm>

#include "varibase/control/blend.hpp"
#include "varibase/core/errors.hpp"

namespace varibase::episode {

BaselineMode BaselineMode::parse(const std::string& text) {
  const size_t colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string kind = text.substr(0, colon);
    const std::string value = text.substr(colon + 1);
    try {
      if (kind == "fixed") return fixed(std::stod(value));
      if (kind == "variable") return with_gain(std::stod(value));
    } catch (const std::exception&) {
      // fall through to the error below
    }
  }
  throw ConfigError("baseline mode must be fixed:<meters> or variable:<gain>, got '" +
                    text + "'");
}

std::string BaselineMode::describe() const {
  return variable ? "variable:" + std::to_string(gain)
                  : "fixed:" + std::to_string(fixed_baseline_m);
}

BaselineController::BaselineController(const BaselineMode& mode,
                                       const io::RigFile& rig,
                                       double slew_rate_m_s,
                                       double initial_baseline_m,
                                       uint64_t seed)
    : mode_(mode),
      rig_(rig),
      slew_rate_(slew_rate_m_s),
      rng_(seed ^ 0xba5e11e5ULL) {
  if (mode_.variable) {
    commanded_ = std::clamp(initial_baseline_m, rig_.actuator.min_baseline_m,
                            rig_.actuator.max_baseline_m);
    achieved_ = rig::command_baseline(rig_.actuator, commanded_, rng_).achieved_m;
  } else {
    if (mode_.fixed_baseline_m < rig_.actuator.min_baseline_m ||
        mode_.fixed_baseline_m > rig_.actuator.max_baseline_m) {
      throw ConfigError("fixed baseline outside rig stroke limits");
    }
    // Calibrated once at this exact operating point.
    commanded_ = achieved_ = mode_.fixed_baseline_m;
  }
}

void BaselineController::command(double z_ref_m, double dt_s) {
  if (!mode_.variable) return;
  const double law =
      control::baseline_law(std::max(z_ref_m, 1e-6), mode_.gain,
                            rig_.actuator.min_baseline_m,
                            rig_.actuator.max_baseline_m);
  commanded_ = control::slew_limit(commanded_, law, slew_rate_, dt_s);
  achieved_ = rig::command_baseline(rig_.actuator, commanded_, rng_).achieved_m;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kReachedGoal: return "reached_goal";
    case Outcome::kCollided: return "collided";
    case Outcome::kTimeout: return "timeout";
    case Outcome::kCompleted: return "completed";
  }
  return "?";
}

}  // namespace varibase::episode
