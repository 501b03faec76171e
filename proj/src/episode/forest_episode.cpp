#include "varibase/episode/forest_episode.hpp"

#include <algorithm>
#include <cmath>

#include "varibase/control/blend.hpp"
#include "varibase/control/free_space.hpp"
#include "varibase/control/pid.hpp"
#include "varibase/geometry/depth.hpp"
#include "varibase/sim/observe.hpp"
#include "varibase/sim/render.hpp"

namespace varibase::episode {

ForestResult run_forest_episode(const sim::Scene& scene,
                                const io::RigFile& rig,
                                const ForestConfig& cfg) {
  const double dt = 1.0 / cfg.step_rate_hz;
  ForestResult result;
  result.records.reserve(cfg.max_steps);

  BaselineController baseline(cfg.baseline, rig, cfg.slew_rate_m_s,
                              rig.actuator.min_baseline_m, cfg.seed);

  sim::ObserverState observer;
  observer.position = cfg.start;
  observer.heading = (cfg.goal - cfg.start).normalized();

  control::PidController pid({cfg.steering_gains, dt, 1.0});
  control::LowPassFilter z_filter(cfg.lowpass_cutoff_hz, dt);
  bool stopped = false;
  int steps_since_trigger = 0;
  const int hold_steps =
      static_cast<int>(std::ceil(cfg.recovery_hold_s / dt));
  double prev_z_lp = cfg.clearance_depth_m;
  Vec3 escape_dir = Vec3::Zero();  // latched sidestep direction per recovery

  for (int step = 0; step < cfg.max_steps; ++step) {
    const double t = step * dt;
    observer.time = t;

    // Sense: true depth at the achieved baseline, quantized matcher-range
    // disparity, depth recovered with the assumed (commanded) calibration.
    const rig::StereoCalibration calib =
        rig.table.interpolate(baseline.commanded());
    const geometry::CameraIntrinsics& intr = calib.intrinsics_left;
    const ImageSize size = rig.image_size;
    const DepthImage true_depth =
        sim::render_depth(scene, observer, intr, size, t);
    sim::DisparityOptions dopts;
    dopts.quantize = true;
    dopts.max_disparity_px = cfg.matcher_max_disparity_px;
    const DisparityImage disparity = sim::synthesize_disparity(
        true_depth, baseline.achieved(), intr.fx, dopts);
    const DepthImage measured = geometry::depth_image_from_disparity(
        disparity, baseline.commanded(), intr.fx);

    // Free space and clearance inside the steering neighborhood.
    const Vec3 v_goal = (cfg.goal - observer.position).normalized();
    const Mat3 r_wc = observer.camera_to_world();
    const Vec2 goal_px = control::anchor_goal_pixel(v_goal, r_wc, intr, size);
    const control::PixelRect neighborhood = control::steering_neighborhood(
        goal_px, cfg.vehicle_size_m, prev_z_lp, cfg.neighborhood_margin, intr,
        size);
    control::FreeSpaceResult free_space = control::free_space_direction(
        measured, intr, r_wc, goal_px, neighborhood, cfg.clearance_depth_m);
    if (free_space.blocked) {
      // Nothing free near the goal direction: search the whole frame for an
      // escape, keeping the neighborhood's Z_close for the safety logic.
      const double z_near = free_space.z_close_m;
      free_space = control::free_space_direction(
          measured, intr, r_wc, goal_px,
          {0, 0, size.width - 1, size.height - 1}, cfg.clearance_depth_m);
      free_space.z_close_m = std::min(free_space.z_close_m, z_near);
      free_space.blocked = free_space.blocked || free_space.free_pixels == 0;
    }

    const double z_close = std::isfinite(free_space.z_close_m)
                               ? free_space.z_close_m
                               : cfg.far_depth_cap_m;
    const double z_lp = z_filter.update(z_close);
    prev_z_lp = z_lp;
    const double w = control::blend_weight_remapped(z_lp);

    // Safety stop; after halting, the vehicle creeps toward free space (even
    // while the corridor stays tight) and resumes cruise once clearance
    // recovers past the release threshold.
    const bool stop_trigger = free_space.blocked || z_close <= cfg.tau_safe_m;
    const bool fresh_stop = stop_trigger && !stopped;
    if (stop_trigger) {
      stopped = true;
      steps_since_trigger = 0;
    } else if (stopped) {
      ++steps_since_trigger;
      if (steps_since_trigger >= hold_steps &&
          z_close > cfg.tau_release_factor * cfg.tau_safe_m) {
        stopped = false;
      }
    }

    // Steering: blended direction in cruise, pure v_free while recovering.
    Vec3 target_dir = v_goal;
    if (stopped && !free_space.blocked) {
      target_dir = free_space.v_free;
    } else if (!free_space.blocked) {
      target_dir =
          control::blend_direction(v_goal, free_space.v_free, w)
              .value_or(free_space.v_free);
    }
    const Vec3 u = pid.step(target_dir - observer.heading);
    Vec3 heading = observer.heading + u * dt;
    heading.y() = 0.0;  // level flight
    if (heading.norm() > 1e-9) observer.heading = heading.normalized();

    // Speed: proximity weight plus depth-confidence at the assumed baseline.
    double speed = 0.0;
    if (stopped) {
      // Hold position on the stop frame, creep toward free space afterwards.
      speed = (fresh_stop || free_space.blocked) ? 0.0 : cfg.v_creep_m_s;
    } else {
      // Depth confidence at the braking horizon: an arm whose depth error at
      // clearance range is large must cruise slower.
      const double z_eval = std::min(z_lp, cfg.clearance_depth_m);
      const double eps_z =
          geometry::depth_error(z_eval, baseline.commanded(), intr.fx, 0.5);
      const double confidence =
          std::clamp(1.0 - cfg.confidence_lambda * eps_z / z_eval,
                     cfg.confidence_floor, 1.0);
      speed = cfg.v_max_m_s * (1.0 - w) * confidence;
    }

    ForestStepRecord rec;
    rec.time_s = t;
    rec.position = observer.position;
    rec.heading = observer.heading;
    rec.commanded_baseline_m = baseline.commanded();
    rec.achieved_baseline_m = baseline.achieved();
    rec.w = w;
    rec.z_close_m = z_close;
    rec.z_close_lp_m = z_lp;
    rec.speed_m_s = speed;
    rec.stopped = stopped || speed == 0.0;
    rec.blocked = free_space.blocked;
    result.records.push_back(rec);

    // Act. A recovering vehicle sidesteps: it creeps along the lateral
    // component of the free direction (velocity command, not
    // heading-constrained), gaining clearance instead of advancing into the
    // obstacle. The sidestep side is latched per recovery so left/right
    // ties cannot oscillate. Cruise follows the heading. Motion stays level.
    Vec3 motion_dir = observer.heading;
    if (stopped && !free_space.blocked) {
      if (escape_dir.isZero()) {
        Vec3 escape =
            free_space.v_free - free_space.v_free.dot(v_goal) * v_goal;
        if (escape.norm() < 1e-6) escape = free_space.v_free;
        escape.y() = 0.0;
        escape_dir = escape.norm() > 1e-9 ? escape.normalized() : Vec3::Zero();
      }
      if (!escape_dir.isZero()) motion_dir = escape_dir;
    } else if (!stopped) {
      escape_dir = Vec3::Zero();
    }
    motion_dir.y() = 0.0;
    if (motion_dir.norm() > 1e-9) {
      motion_dir.normalize();
    } else {
      motion_dir = observer.heading;
    }
    observer.velocity = motion_dir * speed;
    result.records.back().velocity = observer.velocity;
    observer.position += observer.velocity * dt;
    baseline.command(z_lp, dt);

    if (scene.distance_to_nearest(observer.position, t) <=
        cfg.collision_radius_m) {
      result.outcome = Outcome::kCollided;
      result.completion_time_s = t + dt;
      return result;
    }
    if ((observer.position - cfg.goal).norm() <= cfg.goal_radius_m) {
      result.outcome = Outcome::kReachedGoal;
      result.completion_time_s = t + dt;
      return result;
    }
  }
  result.outcome = Outcome::kTimeout;
  result.completion_time_s = cfg.max_steps * dt;
  return result;
}

}  // namespace varibase::episode
