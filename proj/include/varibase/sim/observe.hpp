#pragma once

#include "varibase/core/image.hpp"
#include "varibase/sim/render.hpp"

namespace varibase::sim {

struct DisparityOptions {
  /// Round to integer pixels (ties to even), modeling matcher resolution.
  bool quantize = false;
  /// Disparities above this are invalid (matcher search range / shared
  /// field of view); infinite disables the cut.
  double max_disparity_px = std::numeric_limits<double>::infinity();
  /// Right-camera capture delay. Nonzero requires the scene-aware overload.
  double sync_offset_s = 0.0;
};

/// d = b*f/Z per pixel from a left depth image (perfectly synchronized
/// cameras, static scene assumption).
DisparityImage synthesize_disparity(const DepthImage& depth_left,
                                    double baseline_m, double focal_px,
                                    const DisparityOptions& opts = {});

/// Scene-aware synthesis with a capture-time offset: the left camera samples
/// at observer.time, the right camera at time + sync_offset with the
/// observer advanced by velocity * offset and moving primitives advanced
/// too. Each left pixel's scene point is projected into the displaced right
/// camera; the column difference is the measured disparity (false disparity
/// under motion). Reduces exactly to b*f/Z at zero offset in a static scene.
DisparityImage synthesize_disparity_sync(const Scene& scene,
                                         const ObserverState& observer,
                                         const geometry::CameraIntrinsics& intr,
                                         ImageSize size, double baseline_m,
                                         const DisparityOptions& opts);

}  // namespace varibase::sim
