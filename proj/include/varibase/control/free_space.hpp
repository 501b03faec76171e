#pragma once

#include "varibase/core/image.hpp"
#include "varibase/geometry/camera.hpp"

namespace varibase::control {

/// Axis-aligned pixel rectangle, inclusive bounds.
struct PixelRect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  PixelRect clipped(ImageSize size) const;
  int width() const { return x1 - x0 + 1; }
  int height() const { return y1 - y0 + 1; }
};

/// Where the goal direction (world frame) pierces the image plane; when the
/// goal ray exits the frame (or points backward), the nearest point on the
/// frame edge is returned instead.
Vec2 anchor_goal_pixel(const Vec3& v_goal_world, const Mat3& camera_to_world,
                       const geometry::CameraIntrinsics& intr, ImageSize size);

/// Neighborhood rectangle centered on the anchored goal pixel: the projected
/// vehicle footprint at the previous Z_close, scaled by a safety margin and
/// floored at min_half_px so a wide lens still yields a steerable window.
PixelRect steering_neighborhood(const Vec2& anchor_px, double vehicle_size_m,
                                double z_close_m, double margin,
                                const geometry::CameraIntrinsics& intr,
                                ImageSize size, int min_half_px = 12);

struct FreeSpaceResult {
  bool blocked = false;       // no free pixel in the neighborhood
  Vec3 v_free = Vec3::Zero(); // unit, world frame
  double z_close_m = std::numeric_limits<double>::infinity();
  Vec2 centroid_px = Vec2::Zero();
  int free_pixels = 0;
};

/// Free-path direction from a depth image: pixels inside the neighborhood
/// with depth > clearance (or invalid — nothing in range) form the free
/// mask; v_free is the back-projected ray through the centroid of its
/// largest 4-connected component, ties broken toward the goal pixel.
/// Z_close is the minimum valid depth inside the neighborhood. A
/// neighborhood with no free pixel sets `blocked` (safety stop).
FreeSpaceResult free_space_direction(const DepthImage& depth,
                                     const geometry::CameraIntrinsics& intr,
                                     const Mat3& camera_to_world,
                                     const Vec2& goal_px,
                                     const PixelRect& neighborhood,
                                     double clearance_depth_m);

}  // namespace varibase::control
