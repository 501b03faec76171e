#include "varibase/control/imo.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "varibase/control/blend.hpp"
#include "varibase/geometry/depth.hpp"
#include "varibase/geometry/distortion.hpp"

namespace varibase::control {

std::optional<ImoDetection> detect_imo(const DepthImage& depth_t0,
                                       const DepthImage& depth_t1,
                                       const sim::ObserverState& observer_t0,
                                       const sim::ObserverState& observer_t1,
                                       const geometry::CameraIntrinsics& intr,
                                       const ImoDetectConfig& config) {
  const int w = depth_t1.width();
  const int h = depth_t1.height();

  // Forward-project frame t0 into the t1 camera under ego-motion only,
  // keeping the nearest and farthest source per target pixel: where the two
  // disagree, a foreground and a background surface both landed there (an
  // occlusion boundary) and the prediction is unusable.
  const Mat3 r0 = observer_t0.camera_to_world();
  const Mat3 r1t = observer_t1.camera_to_world().transpose();
  DepthImage predicted_near(w, h);
  DepthImage predicted_far(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!depth_t0.valid(x, y)) continue;
      const double z = depth_t0.value(x, y);
      const Vec2 n = geometry::pixel_to_normalized_affine(Vec2(x, y), intr);
      const Vec3 world =
          observer_t0.position + r0 * Vec3(n.x() * z, n.y() * z, z);
      const Vec3 cam1 = r1t * (world - observer_t1.position);
      if (!(cam1.z() > 0.0)) continue;
      const Vec2 px = geometry::normalized_to_pixel_affine(
          Vec2(cam1.x() / cam1.z(), cam1.y() / cam1.z()), intr);
      const int px_x = static_cast<int>(std::lround(px.x()));
      const int px_y = static_cast<int>(std::lround(px.y()));
      if (!predicted_near.in_bounds(px_x, px_y)) continue;
      if (!predicted_near.valid(px_x, px_y)) {
        predicted_near.set(px_x, px_y, cam1.z());
        predicted_far.set(px_x, px_y, cam1.z());
      } else {
        predicted_near.set(px_x, px_y,
                           std::min(cam1.z(), predicted_near.value(px_x, px_y)));
        predicted_far.set(px_x, px_y,
                          std::max(cam1.z(), predicted_far.value(px_x, px_y)));
      }
    }
  }

  // Residual outliers where an unambiguous prediction and an observation
  // both exist.
  Image<uint8_t> outliers(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!depth_t1.valid(x, y) || !predicted_near.valid(x, y)) continue;
      const double z = depth_t1.value(x, y);
      const double threshold =
          std::max(config.residual_floor_m, config.residual_rel * z);
      if (predicted_far.value(x, y) - predicted_near.value(x, y) > threshold) {
        continue;  // occlusion-ambiguous prediction
      }
      if (std::abs(z - predicted_near.value(x, y)) > threshold) {
        outliers.set(x, y, 1);
      }
    }
  }

  // Largest 4-connected outlier cluster.
  Image<uint8_t> visited(w, h);
  ImoDetection best;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!outliers.valid(x, y) || visited.valid(x, y)) continue;
      Image<uint8_t> mask(w, h);
      int count = 0;
      double sum_x = 0.0, sum_y = 0.0;
      std::queue<std::pair<int, int>> frontier;
      frontier.emplace(x, y);
      visited.set(x, y, 1);
      while (!frontier.empty()) {
        const auto [cx, cy] = frontier.front();
        frontier.pop();
        mask.set(cx, cy, 1);
        ++count;
        sum_x += cx;
        sum_y += cy;
        const int neighbors[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& d : neighbors) {
          const int mx = cx + d[0];
          const int my = cy + d[1];
          if (mask.in_bounds(mx, my) && outliers.valid(mx, my) &&
              !visited.valid(mx, my)) {
            visited.set(mx, my, 1);
            frontier.emplace(mx, my);
          }
        }
      }
      if (count > best.pixel_count) {
        best.pixel_count = count;
        best.mask = std::move(mask);
        best.centroid_px = Vec2(sum_x / count, sum_y / count);
      }
    }
  }

  if (best.pixel_count < config.min_cluster_px) return std::nullopt;
  return best;
}

TrackStatus track_imo(ImoTrack& track, const ImoDetection& detection,
                      const DepthImage& measured_depth,
                      const sim::ObserverState& observer,
                      const geometry::CameraIntrinsics& intr,
                      double baseline_m, double time,
                      const ImoTrackConfig& config) {
  const double focal_px = intr.fx;
  // Median measured depth over the object mask.
  std::vector<double> depths;
  depths.reserve(detection.pixel_count);
  for (int y = 0; y < measured_depth.height(); ++y) {
    for (int x = 0; x < measured_depth.width(); ++x) {
      if (detection.mask.pixel_count() && detection.mask.valid(x, y) &&
          measured_depth.valid(x, y)) {
        depths.push_back(measured_depth.value(x, y));
      }
    }
  }
  if (depths.empty()) {
    track.last_status = TrackStatus::kNoDepth;
    return track.last_status;
  }
  const size_t mid = depths.size() / 2;
  std::nth_element(depths.begin(), depths.begin() + mid, depths.end());
  const double z_med = depths[mid];
  track.median_depth_m = z_med;

  // Loss conditions: object out of the shared stereo view (near range,
  // large baseline) or depth error bound past the accuracy threshold (far
  // range, small baseline).
  const double object_disparity = baseline_m * focal_px / z_med;
  if (object_disparity > config.max_visible_disparity_px) {
    track.last_status = TrackStatus::kLostVisibility;
    return track.last_status;
  }
  const double eps_z = geometry::depth_error(
      z_med, baseline_m, focal_px, config.assumed_disparity_error_px);
  if (eps_z > config.accuracy_threshold_m) {
    track.last_status = TrackStatus::kLostAccuracy;
    return track.last_status;
  }

  // Object position: mask centroid back-projected at the median depth.
  const Vec2 n = geometry::pixel_to_normalized_affine(detection.centroid_px, intr);
  const Vec3 position =
      observer.position +
      observer.camera_to_world() * Vec3(n.x() * z_med, n.y() * z_med, z_med);
  track.trajectory.emplace_back(time, position);
  track.last_good_position = position;
  track.last_good_time = time;
  track.commanded_baseline_m =
      baseline_law(z_med, config.baseline_gain, config.min_baseline_m,
                   config.max_baseline_m);
  track.last_status = TrackStatus::kTracked;
  return track.last_status;
}

}  // namespace varibase::control
