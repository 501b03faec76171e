#pragma once

#include <optional>
#include <vector>

#include "varibase/core/image.hpp"
#include "varibase/geometry/camera.hpp"
#include "varibase/sim/scene.hpp"

namespace varibase::control {

struct ImoDetectConfig {
  /// Residual floor in meters; pixels whose |observed - ego-predicted|
  /// depth exceeds max(floor, rel * Z) are motion outliers.
  double residual_floor_m = 0.05;
  double residual_rel = 0.0;
  int min_cluster_px = 12;
};

struct ImoDetection {
  Image<uint8_t> mask;
  int pixel_count = 0;
  Vec2 centroid_px = Vec2::Zero();
};

/// Independently-moving-object detection from two consecutive depth frames
/// and the known observer motion: frame t0 is forward-projected into the t1
/// camera (z-buffered scatter), pixels with large depth residuals are
/// clustered 4-connected, and the largest cluster above min size is the
/// object (one visible IMO assumed). Returns nullopt when ego-motion
/// explains everything (static scene) or no cluster is big enough.
std::optional<ImoDetection> detect_imo(const DepthImage& depth_t0,
                                       const DepthImage& depth_t1,
                                       const sim::ObserverState& observer_t0,
                                       const sim::ObserverState& observer_t1,
                                       const geometry::CameraIntrinsics& intr,
                                       const ImoDetectConfig& config = {});

struct ImoTrackConfig {
  double baseline_gain = 0.12;
  double min_baseline_m = 0.1;
  double max_baseline_m = 0.3;
  /// Track is lost when eps_z(Z_med) = Z^2 eps_d/(b f) exceeds this.
  double accuracy_threshold_m = 0.5;
  double assumed_disparity_error_px = 0.5;  // quantization bound
  /// Object disparity above this means it is not visible in both cameras.
  double max_visible_disparity_px = 64.0;
};

enum class TrackStatus { kTracked, kLostAccuracy, kLostVisibility, kNoDepth };

struct ImoTrack {
  std::vector<std::pair<double, Vec3>> trajectory;  // (time, world position)
  double median_depth_m = 0.0;
  double commanded_baseline_m = 0.0;
  TrackStatus last_status = TrackStatus::kTracked;
  /// Last state before a loss, kept for re-acquisition.
  Vec3 last_good_position = Vec3::Zero();
  double last_good_time = 0.0;
};

/// One tracking step: median measured depth over the detection mask,
/// back-projected mask centroid appended to the trajectory, next baseline
/// from the baseline law. Declares the track lost when the depth-error
/// bound crosses the accuracy threshold (far range) or the object's
/// disparity leaves the visible range (near range); the last good state is
/// retained.
TrackStatus track_imo(ImoTrack& track, const ImoDetection& detection,
                      const DepthImage& measured_depth,
                      const sim::ObserverState& observer,
                      const geometry::CameraIntrinsics& intr,
                      double baseline_m, double time,
                      const ImoTrackConfig& config = {});

}  // namespace varibase::control
