#pragma once

#include "varibase/core/types.hpp"

namespace varibase::geometry {

/// Pinhole intrinsics: focal lengths and principal point in pixels,
/// dimensionless skew. The skew couples y into the projected x coordinate
/// only (x_pix = fx*(x + alpha*y) + cx); it never appears anywhere else.
struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  double alpha = 0.0;

  CameraIntrinsics() = default;
  /// Validates fx,fy > 0, alpha finite, and the principal point within
  /// `margin` * image extent of the image bounds (margin 0.5 means the
  /// principal point may be up to half an image outside). Throws
  /// std::invalid_argument.
  CameraIntrinsics(double fx, double fy, double cx, double cy, double alpha,
                   ImageSize bounds = {0, 0}, double margin = 0.5);
};

/// Radial-tangential lens distortion acting on normalized coordinates:
///
///   x_r = (1 + k1 r^2 + k2 r^4 + k5 r^6) * x
///         + [ 2 k3 x y + k4 (r^2 + 2 x^2),
///             k3 (r^2 + 2 y^2) + 2 k4 x y ],   r^2 = x^2 + y^2
///
/// k1, k2, k5 are radial; k3, k4 tangential. Construction verifies the map
/// stays locally injective (Jacobian determinant > 0) on a sample grid over
/// the configured normalized domain, so iterative inversion is well posed.
///
/// Documented coefficient ranges safe over the default |x|,|y| <= 1.5 domain:
/// k1 in [-0.06, 0.06], k2 in [0, 0.01], k5 in [0, 5e-4],
/// k3, k4 in [-1e-3, 1e-3]. Larger radial terms can pass too when they
/// compensate each other (the check is on the full polynomial).
struct DistortionCoefficients {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double k4 = 0.0;
  double k5 = 0.0;

  DistortionCoefficients() = default;
  DistortionCoefficients(double k1, double k2, double k3, double k4, double k5,
                         double domain_bound = kDefaultDomainBound);

  static constexpr double kDefaultDomainBound = 1.5;
  static constexpr int kInjectivityGridSamples = 33;
};

struct CameraModel {
  CameraIntrinsics intrinsics;
  DistortionCoefficients distortion;
};

/// Builds the square-sensor camera used throughout the error analysis:
/// focal length in millimeters over a `sensor_mm` x `sensor_mm` sensor mapped
/// to `size` pixels, principal point at the image center, with the supplied
/// skew/distortion (pass {} for an ideal pinhole).
CameraModel make_square_sensor_camera(double focal_mm, ImageSize size,
                                      double sensor_mm, double alpha,
                                      const DistortionCoefficients& dist);

}  // namespace varibase::geometry
