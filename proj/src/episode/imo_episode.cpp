#include "varibase/episode/imo_episode.hpp"

#include <cmath>

#include "varibase/geometry/depth.hpp"
#include "varibase/sim/observe.hpp"
#include "varibase/sim/render.hpp"

namespace varibase::episode {

namespace {

const sim::Box* find_moving_box(const sim::Scene& scene) {
  for (const sim::Primitive& p : scene.primitives()) {
    if (const sim::Box* b = std::get_if<sim::Box>(&p)) {
      if (b->velocity.norm() > 0.0) return b;
    }
  }
  return nullptr;
}

}  // namespace

int ImoResult::tracked_steps() const {
  int n = 0;
  for (const ImoStepRecord& r : records) {
    if (r.detected && r.status == control::TrackStatus::kTracked) ++n;
  }
  return n;
}

int ImoResult::lost_steps() const {
  int lost = 0;
  for (const ImoStepRecord& r : records) {
    if (r.detected && r.status != control::TrackStatus::kTracked) ++lost;
  }
  return lost;
}

double ImoResult::mean_tracked_error() const {
  double sum = 0.0;
  int n = 0;
  for (const ImoStepRecord& r : records) {
    if (r.detected && r.status == control::TrackStatus::kTracked) {
      sum += (r.estimated_position - r.true_position).norm();
      ++n;
    }
  }
  return n ? sum / n : std::numeric_limits<double>::infinity();
}

ImoResult run_imo_episode(const sim::Scene& scene, const io::RigFile& rig,
                          const ImoConfig& cfg) {
  const double dt = 1.0 / cfg.step_rate_hz;
  ImoResult result;
  result.records.reserve(cfg.max_steps);

  const sim::Box* box = find_moving_box(scene);

  BaselineController baseline(cfg.baseline, rig, cfg.slew_rate_m_s,
                              rig.actuator.min_baseline_m, cfg.seed);

  sim::ObserverState observer;
  observer.position = cfg.observer_position;
  observer.heading = Vec3::UnitZ();

  control::ImoTrackConfig tracker = cfg.tracker;
  tracker.baseline_gain = cfg.baseline.variable ? cfg.baseline.gain
                                                : tracker.baseline_gain;
  tracker.min_baseline_m = rig.actuator.min_baseline_m;
  tracker.max_baseline_m = rig.actuator.max_baseline_m;
  tracker.max_visible_disparity_px = cfg.visibility_disparity_px;

  std::optional<DepthImage> previous_depth;

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
    dopts.max_disparity_px = cfg.visibility_disparity_px;
    const DisparityImage disparity = sim::synthesize_disparity(
        true_depth, baseline.achieved(), intr.fx, dopts);
    const DepthImage measured = geometry::depth_image_from_disparity(
        disparity, baseline.commanded(), intr.fx);

    ImoStepRecord rec;
    rec.time_s = t;
    rec.commanded_baseline_m = baseline.commanded();
    rec.achieved_baseline_m = baseline.achieved();
    if (box) {
      rec.true_position = box->center_at(t);
      rec.true_depth_m = (rec.true_position - observer.position)
                             .dot(observer.camera_to_world().col(2));
    }

    if (previous_depth) {
      const std::optional<control::ImoDetection> detection =
          control::detect_imo(*previous_depth, true_depth, observer, observer,
                              intr, cfg.detector);
      if (detection) {
        rec.detected = true;
        rec.status = control::track_imo(result.track, *detection, measured,
                                        observer, intr, baseline.commanded(),
                                        t, tracker);
        rec.measured_depth_m = result.track.median_depth_m;
        if (rec.status == control::TrackStatus::kTracked) {
          rec.estimated_position = result.track.trajectory.back().second;
          baseline.command(result.track.median_depth_m, dt);
        }
      }
    }

    result.records.push_back(rec);
    previous_depth = true_depth;
  }
  return result;
}

}  // namespace varibase::episode
