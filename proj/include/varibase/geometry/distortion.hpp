#pragma once

#include "varibase/geometry/camera.hpp"

namespace varibase::geometry {

/// Applies the radial-tangential model to a normalized point and projects it
/// to pixels, skew included: pixel = (fx*(x_r + alpha*y_r) + cx, fy*y_r + cy).
/// Throws std::invalid_argument on non-finite input.
Vec2 project_with_distortion(const Vec2& point_normalized,
                             const DistortionCoefficients& dist,
                             const CameraIntrinsics& intr);

/// Distortion-then-projection of a normalized point, without the pixel
/// affine part (the x_r of the model).
Vec2 distort_normalized(const Vec2& point_normalized,
                        const DistortionCoefficients& dist);

/// Jacobian of distort_normalized at a point (analytic).
Mat3 distortion_jacobian2x2_padded(const Vec2& p,
                                   const DistortionCoefficients& dist);

struct UndistortOptions {
  double tolerance = 1e-10;  // residual in normalized coordinates
  int max_iterations = 50;
};

/// Inverts project_with_distortion with a damped Newton iteration on the
/// normalized-coordinate residual. Round trip holds to ~1e-6 px over the
/// documented coefficient ranges. Throws ConvergenceError (carrying the
/// final residual) when the iteration fails.
Vec2 undistort(const Vec2& pixel, const DistortionCoefficients& dist,
               const CameraIntrinsics& intr, const UndistortOptions& opts = {});

/// Pixel -> normalized through the affine part only (no distortion):
/// y = (v - cy)/fy, x = (u - cx)/fx - alpha*y.
Vec2 pixel_to_normalized_affine(const Vec2& pixel, const CameraIntrinsics& intr);

/// Normalized -> pixel through the affine part only (no distortion).
Vec2 normalized_to_pixel_affine(const Vec2& point, const CameraIntrinsics& intr);

}  // namespace varibase::geometry
