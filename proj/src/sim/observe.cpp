#include "varibase/sim/observe.hpp"

#include "varibase/geometry/distortion.hpp"
#include "varibase/kernels/kernels.hpp"

namespace varibase::sim {

namespace {

void apply_common_options(DisparityImage& d, const DisparityOptions& opts) {
  if (opts.quantize) {
    kernels::quantize(d.data(), d.pixel_count());
  }
  if (std::isfinite(opts.max_disparity_px)) {
    for (int v = 0; v < d.height(); ++v) {
      for (int u = 0; u < d.width(); ++u) {
        if (d.valid(u, v) && d.value(u, v) > opts.max_disparity_px) {
          d.set_invalid(u, v);
        }
      }
    }
  }
}

}  // namespace

DisparityImage synthesize_disparity(const DepthImage& depth_left,
                                    double baseline_m, double focal_px,
                                    const DisparityOptions& opts) {
  DisparityImage d(depth_left.width(), depth_left.height());
  kernels::reciprocal_scaled(depth_left.data(), depth_left.valid_data(),
                             baseline_m * focal_px, depth_left.pixel_count(),
                             d.data(), d.valid_data());
  apply_common_options(d, opts);
  return d;
}

DisparityImage synthesize_disparity_sync(const Scene& scene,
                                         const ObserverState& observer,
                                         const geometry::CameraIntrinsics& intr,
                                         ImageSize size, double baseline_m,
                                         const DisparityOptions& opts) {
  const RenderResult left = render_depth_ex(scene, observer, intr, size,
                                            observer.time);
  const double dt = opts.sync_offset_s;
  const Mat3 r_wc = observer.camera_to_world();
  const Vec3 right_center = observer.position + observer.velocity * dt +
                            r_wc.col(0) * baseline_m;

  DisparityImage d(size.width, size.height);
  for (int v = 0; v < size.height; ++v) {
    for (int u = 0; u < size.width; ++u) {
      if (!left.depth.valid(u, v)) continue;
      Vec3 p(left.point_x.value(u, v), left.point_y.value(u, v),
             left.point_z.value(u, v));
      // Moving primitives advance over the capture offset.
      p += Vec3(left.velocity_x.value(u, v), left.velocity_y.value(u, v),
                left.velocity_z.value(u, v)) *
           dt;
      const Vec3 p_right = r_wc.transpose() * (p - right_center);
      if (!(p_right.z() > 0.0)) continue;
      const Vec2 pixel_right = geometry::normalized_to_pixel_affine(
          Vec2(p_right.x() / p_right.z(), p_right.y() / p_right.z()), intr);
      const double disparity = static_cast<double>(u) - pixel_right.x();
      if (disparity < 0.0) continue;
      d.set(u, v, disparity);
    }
  }
  apply_common_options(d, opts);
  return d;
}

}  // namespace varibase::sim
