#include "varibase/geometry/distortion.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "varibase/core/errors.hpp"

namespace varibase::geometry {

Vec2 distort_normalized(const Vec2& p, const DistortionCoefficients& d) {
  const double x = p.x();
  const double y = p.y();
  const double r2 = x * x + y * y;
  const double radial = 1.0 + r2 * (d.k1 + r2 * (d.k2 + r2 * d.k5));
  const double tx = 2.0 * d.k3 * x * y + d.k4 * (r2 + 2.0 * x * x);
  const double ty = d.k3 * (r2 + 2.0 * y * y) + 2.0 * d.k4 * x * y;
  return Vec2(radial * x + tx, radial * y + ty);
}

Mat3 distortion_jacobian2x2_padded(const Vec2& p,
                                   const DistortionCoefficients& d) {
  const double x = p.x();
  const double y = p.y();
  const double r2 = x * x + y * y;
  const double g = 1.0 + r2 * (d.k1 + r2 * (d.k2 + r2 * d.k5));
  // dg/d(r^2)
  const double gp = d.k1 + r2 * (2.0 * d.k2 + 3.0 * d.k5 * r2);

  Mat3 J = Mat3::Identity();
  J(0, 0) = g + 2.0 * x * x * gp + 2.0 * d.k3 * y + 6.0 * d.k4 * x;
  J(0, 1) = 2.0 * x * y * gp + 2.0 * d.k3 * x + 2.0 * d.k4 * y;
  J(1, 0) = 2.0 * x * y * gp + 2.0 * d.k3 * x + 2.0 * d.k4 * y;
  J(1, 1) = g + 2.0 * y * y * gp + 6.0 * d.k3 * y + 2.0 * d.k4 * x;
  return J;
}

Vec2 project_with_distortion(const Vec2& point, const DistortionCoefficients& d,
                             const CameraIntrinsics& k) {
  if (!std::isfinite(point.x()) || !std::isfinite(point.y())) {
    throw std::invalid_argument("project_with_distortion: non-finite input");
  }
  const Vec2 r = distort_normalized(point, d);
  return Vec2(k.fx * (r.x() + k.alpha * r.y()) + k.cx, k.fy * r.y() + k.cy);
}

Vec2 pixel_to_normalized_affine(const Vec2& pixel, const CameraIntrinsics& k) {
  const double y = (pixel.y() - k.cy) / k.fy;
  const double x = (pixel.x() - k.cx) / k.fx - k.alpha * y;
  return Vec2(x, y);
}

Vec2 normalized_to_pixel_affine(const Vec2& p, const CameraIntrinsics& k) {
  return Vec2(k.fx * (p.x() + k.alpha * p.y()) + k.cx, k.fy * p.y() + k.cy);
}

Vec2 undistort(const Vec2& pixel, const DistortionCoefficients& d,
               const CameraIntrinsics& k, const UndistortOptions& opts) {
  if (!std::isfinite(pixel.x()) || !std::isfinite(pixel.y())) {
    throw std::invalid_argument("undistort: non-finite input");
  }
  // Invert the affine part exactly, then solve distort_normalized(x) = target
  // with damped Newton steps.
  const Vec2 target = pixel_to_normalized_affine(pixel, k);
  Vec2 x = target;  // distortion is near-identity at the origin
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.max_iterations; ++it) {
    const Vec2 f = distort_normalized(x, d) - target;
    residual = f.norm();
    if (residual < opts.tolerance) return x;

    const Mat3 Jp = distortion_jacobian2x2_padded(x, d);
    Eigen::Matrix2d J;
    J << Jp(0, 0), Jp(0, 1), Jp(1, 0), Jp(1, 1);
    const Vec2 step = J.partialPivLu().solve(f);

    double damping = 1.0;
    Vec2 candidate = x - step;
    // Backtrack while the residual does not improve.
    for (int bt = 0; bt < 8; ++bt) {
      if ((distort_normalized(candidate, d) - target).norm() < residual) break;
      damping *= 0.5;
      candidate = x - damping * step;
    }
    x = candidate;
  }
  const double final_residual = (distort_normalized(x, d) - target).norm();
  if (final_residual < opts.tolerance) return x;
  std::ostringstream msg;
  msg << "undistort: no convergence after " << opts.max_iterations
      << " iterations at pixel (" << pixel.x() << ", " << pixel.y()
      << "), residual " << final_residual;
  throw ConvergenceError(msg.str(), final_residual);
}

}  // namespace varibase::geometry
