#include "varibase/control/free_space.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "varibase/geometry/distortion.hpp"
#include "varibase/kernels/kernels.hpp"

namespace varibase::control {

PixelRect PixelRect::clipped(ImageSize size) const {
  PixelRect r = *this;
  r.x0 = std::max(0, r.x0);
  r.y0 = std::max(0, r.y0);
  r.x1 = std::min(size.width - 1, r.x1);
  r.y1 = std::min(size.height - 1, r.y1);
  return r;
}

Vec2 anchor_goal_pixel(const Vec3& v_goal_world, const Mat3& camera_to_world,
                       const geometry::CameraIntrinsics& intr,
                       ImageSize size) {
  const Vec3 cam = camera_to_world.transpose() * v_goal_world;
  Vec2 px;
  if (cam.z() > 1e-9) {
    px = geometry::normalized_to_pixel_affine(
        Vec2(cam.x() / cam.z(), cam.y() / cam.z()), intr);
  } else {
    // Goal behind or beside the camera: aim at the frame edge on its side.
    const double angle = std::atan2(cam.y(), cam.x());
    px = Vec2(intr.cx + std::cos(angle) * size.width,
              intr.cy + std::sin(angle) * size.height);
  }
  px.x() = std::clamp(px.x(), 0.0, static_cast<double>(size.width - 1));
  px.y() = std::clamp(px.y(), 0.0, static_cast<double>(size.height - 1));
  return px;
}

PixelRect steering_neighborhood(const Vec2& anchor_px, double vehicle_size_m,
                                double z_close_m, double margin,
                                const geometry::CameraIntrinsics& intr,
                                ImageSize size, int min_half_px) {
  const double z = std::max(z_close_m, 0.05);
  const double half_px = 0.5 * margin * vehicle_size_m * intr.fx / z;
  const int h = std::max(min_half_px, static_cast<int>(std::ceil(half_px)));
  PixelRect r{static_cast<int>(anchor_px.x()) - h,
              static_cast<int>(anchor_px.y()) - h,
              static_cast<int>(anchor_px.x()) + h,
              static_cast<int>(anchor_px.y()) + h};
  return r.clipped(size);
}

FreeSpaceResult free_space_direction(const DepthImage& depth,
                                     const geometry::CameraIntrinsics& intr,
                                     const Mat3& camera_to_world,
                                     const Vec2& goal_px,
                                     const PixelRect& neighborhood,
                                     double clearance_depth_m) {
  const PixelRect n = neighborhood.clipped(depth.size());
  const int nw = n.width();
  const int nh = n.height();
  FreeSpaceResult out;
  if (nw <= 0 || nh <= 0) {
    out.blocked = true;
    return out;
  }

  // Free mask over the neighborhood; invalid pixels count as free at far
  // range (sky / beyond sensing range). Row-wise through the mask kernel.
  std::vector<uint8_t> free_mask(static_cast<size_t>(nw) * nh);
  double z_close = std::numeric_limits<double>::infinity();
  for (int row = 0; row < nh; ++row) {
    const size_t base = depth.index(n.x0, n.y0 + row);
    kernels::mask_greater(depth.data() + base, depth.valid_data() + base,
                          clearance_depth_m, /*invalid_is_true=*/true, nw,
                          free_mask.data() + static_cast<size_t>(row) * nw);
    const double row_min =
        kernels::min_masked(depth.data() + base, depth.valid_data() + base, nw);
    z_close = std::min(z_close, row_min);
  }
  out.z_close_m = z_close;

  // Largest 4-connected free component (ties toward the goal pixel).
  std::vector<int> component(free_mask.size(), -1);
  int best_size = 0;
  double best_tie = std::numeric_limits<double>::infinity();
  Vec2 best_centroid = Vec2::Zero();
  int next_component = 0;
  for (size_t start = 0; start < free_mask.size(); ++start) {
    if (!free_mask[start] || component[start] >= 0) continue;
    int size_px = 0;
    double sum_x = 0.0;
    double sum_y = 0.0;
    std::queue<int> frontier;
    frontier.push(static_cast<int>(start));
    component[start] = next_component;
    while (!frontier.empty()) {
      const int idx = frontier.front();
      frontier.pop();
      const int lx = idx % nw;
      const int ly = idx / nw;
      ++size_px;
      sum_x += n.x0 + lx;
      sum_y += n.y0 + ly;
      const int neighbors[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      for (const auto& d : neighbors) {
        const int mx = lx + d[0];
        const int my = ly + d[1];
        if (mx < 0 || mx >= nw || my < 0 || my >= nh) continue;
        const int midx = my * nw + mx;
        if (free_mask[midx] && component[midx] < 0) {
          component[midx] = next_component;
          frontier.push(midx);
        }
      }
    }
    const Vec2 centroid(sum_x / size_px, sum_y / size_px);
    const double tie = (centroid - goal_px).norm();
    if (size_px > best_size || (size_px == best_size && tie < best_tie)) {
      best_size = size_px;
      best_tie = tie;
      best_centroid = centroid;
    }
    ++next_component;
  }

  if (best_size == 0) {
    out.blocked = true;
    return out;
  }

  out.free_pixels = best_size;
  out.centroid_px = best_centroid;
  const Vec2 nrm = geometry::pixel_to_normalized_affine(best_centroid, intr);
  out.v_free = (camera_to_world * Vec3(nrm.x(), nrm.y(), 1.0)).normalized();
  return out;
}

}  // namespace varibase::control
