#pragma once

#include "varibase/core/image.hpp"
#include "varibase/geometry/camera.hpp"
#include "varibase/sim/scene.hpp"

namespace varibase::sim {

/// Ray-cast render: per-pixel hit bookkeeping beyond plain depth, used by
/// disparity synthesis (world point + primitive velocity) and the detection
/// oracles (primitive index).
struct RenderResult {
  DepthImage depth;              // Z along the optical axis, meters
  Image<int> primitive_index;    // valid where depth is valid
  Image<double> point_x;         // hit point, world frame
  Image<double> point_y;
  Image<double> point_z;
  Image<double> velocity_x;      // hit primitive velocity, world frame
  Image<double> velocity_y;
  Image<double> velocity_z;
  bool camera_contained = false;
};

/// Depth of the nearest intersection along each pixel's (undistorted) ray;
/// pixels hitting nothing are invalid. Moving primitives are evaluated at
/// `time`. A camera inside a primitive yields an all-invalid image with
/// camera_contained set. Throws std::invalid_argument when the observer is
/// outside the scene bounds.
RenderResult render_depth_ex(const Scene& scene, const ObserverState& observer,
                             const geometry::CameraIntrinsics& intr,
                             ImageSize size, double time);

DepthImage render_depth(const Scene& scene, const ObserverState& observer,
                        const geometry::CameraIntrinsics& intr, ImageSize size,
                        double time);

/// Gray render with deterministic value-noise texture anchored to each
/// primitive's local frame (texture rides along with moving boxes), for
/// block-matching tests. Background (no hit) renders mid-gray and invalid.
Image<double> render_textured(const Scene& scene, const ObserverState& observer,
                              const geometry::CameraIntrinsics& intr,
                              ImageSize size, double time,
                              double texture_cell_m = 0.02, uint64_t seed = 7);

/// Camera center of the right camera at `baseline` along the camera x axis.
Vec3 right_camera_center(const ObserverState& observer, double baseline_m);

}  // namespace varibase::sim
