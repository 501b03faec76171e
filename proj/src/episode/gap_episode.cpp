#include "varibase/episode/gap_episode.hpp"

#include <algorithm>
#include <cmath>

#include "varibase/control/blend.hpp"
#include "varibase/geometry/depth.hpp"
#include "varibase/geometry/distortion.hpp"
#include "varibase/sim/observe.hpp"
#include "varibase/sim/render.hpp"

namespace varibase::episode {

namespace {

const sim::Wall* find_wall(const sim::Scene& scene) {
  for (const sim::Primitive& p : scene.primitives()) {
    if (const sim::Wall* w = std::get_if<sim::Wall>(&p)) {
      if (!w->aperture.empty()) return w;
    }
  }
  return nullptr;
}

}  // namespace

GapResult run_gap_episode(const sim::Scene& scene, const io::RigFile& rig,
                          const GapConfig& cfg) {
  const double dt = 1.0 / cfg.step_rate_hz;
  GapResult result;
  result.records.reserve(cfg.max_steps);

  const sim::Wall* wall = find_wall(scene);

  BaselineController baseline(cfg.baseline, rig, cfg.slew_rate_m_s,
                              rig.actuator.max_baseline_m, cfg.seed);

  sim::ObserverState observer;
  observer.position = cfg.start;
  observer.heading = Vec3::UnitZ();

  control::LowPassFilter z_filter(cfg.lowpass_cutoff_hz, dt);
  std::optional<control::GapState> gap;

  for (int step = 0; step < cfg.max_steps; ++step) {
    const double t = step * dt;
    observer.time = t;

    const rig::StereoCalibration calib =
        rig.table.interpolate(baseline.commanded());
    const geometry::CameraIntrinsics& intr = calib.intrinsics_left;
    const DepthImage true_depth =
        sim::render_depth(scene, observer, intr, rig.image_size, t);
    sim::DisparityOptions dopts;
    dopts.quantize = true;
    dopts.max_disparity_px = cfg.matcher_max_disparity_px;
    const DisparityImage disparity = sim::synthesize_disparity(
        true_depth, baseline.achieved(), intr.fx, dopts);
    const DepthImage measured = geometry::depth_image_from_disparity(
        disparity, baseline.commanded(), intr.fx);

    gap = gap ? control::track_gap(*gap, measured, cfg.detector)
              : control::detect_gap(measured, cfg.detector);

    GapStepRecord rec;
    rec.time_s = t;
    rec.position = observer.position;
    rec.commanded_baseline_m = baseline.commanded();
    rec.achieved_baseline_m = baseline.achieved();
    rec.gap_visible = gap.has_value();

    Vec3 velocity = Vec3::UnitZ() * cfg.approach_speed_m_s;
    if (gap) {
      rec.median_contour_depth_m = gap->median_contour_depth_m;
      rec.safest_point_px = gap->safest_point_px;
      rec.re_detected = gap->re_detected;

      // Lateral alignment of the image center with the safest point, with a
      // deadband absorbing the integer quantization of the median.
      Vec2 err_px = gap->safest_point_px - Vec2(intr.cx, intr.cy);
      for (int axis = 0; axis < 2; ++axis) {
        if (std::abs(err_px(axis)) <= cfg.alignment_deadband_px) {
          err_px(axis) = 0.0;
        }
      }
      const Vec2 n(err_px.x() / intr.fx, err_px.y() / intr.fy);
      const Mat3 r_wc = observer.camera_to_world();
      Vec3 lateral = r_wc.col(0) * n.x() + r_wc.col(1) * n.y();
      lateral *= cfg.lateral_gain * gap->median_contour_depth_m;
      const double lat_norm = lateral.norm();
      if (lat_norm > cfg.max_lateral_speed_m_s) {
        lateral *= cfg.max_lateral_speed_m_s / lat_norm;
      }
      velocity += lateral;

      const double z_ref = z_filter.update(gap->median_contour_depth_m);
      baseline.command(z_ref, dt);
    }

    result.records.push_back(rec);

    const Vec3 previous = observer.position;
    observer.velocity = velocity;
    observer.position += velocity * dt;

    if (wall) {
      const double before = (previous - wall->origin).dot(wall->normal());
      const double after =
          (observer.position - wall->origin).dot(wall->normal());
      if (before != 0.0 && (before > 0) != (after > 0)) {
        // Crossed the wall plane; interpolate the crossing point.
        const double s = before / (before - after);
        const Vec3 crossing = previous + s * (observer.position - previous);
        result.crossing_point = crossing;
        const Vec3 rel = crossing - wall->origin;
        const Vec2 uv(rel.dot(wall->u_axis), rel.dot(wall->v_axis));
        const bool through_hole =
            std::abs(uv.x()) > wall->half_u || std::abs(uv.y()) > wall->half_v ||
            sim::point_in_polygon(uv, wall->aperture);
        result.outcome =
            through_hole ? Outcome::kCompleted : Outcome::kCollided;
        result.completion_time_s = t + dt;
        return result;
      }
    }
  }
  result.outcome = Outcome::kTimeout;
  result.completion_time_s = cfg.max_steps * dt;
  return result;
}

}  // namespace varibase::episode
