#include "varibase/geometry/camera.hpp"

#include <cmath>
#include <stdexcept>

#include "varibase/geometry/distortion.hpp"

namespace varibase::geometry {

CameraIntrinsics::CameraIntrinsics(double fx_, double fy_, double cx_,
                                   double cy_, double alpha_, ImageSize bounds,
                                   double margin)
    : fx(fx_), fy(fy_), cx(cx_), cy(cy_), alpha(alpha_) {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw std::invalid_argument("CameraIntrinsics: focal lengths must be > 0");
  }
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("CameraIntrinsics: skew must be finite");
  }
  if (bounds.width > 0 && bounds.height > 0) {
    const double mx = margin * bounds.width;
    const double my = margin * bounds.height;
    if (cx < -mx || cx > bounds.width + mx || cy < -my ||
        cy > bounds.height + my) {
      throw std::invalid_argument(
          "CameraIntrinsics: principal point outside image bounds margin");
    }
  }
}

DistortionCoefficients::DistortionCoefficients(double k1_, double k2_,
                                               double k3_, double k4_,
                                               double k5_, double domain_bound)
    : k1(k1_), k2(k2_), k3(k3_), k4(k4_), k5(k5_) {
  for (double k : {k1, k2, k3, k4, k5}) {
    if (!std::isfinite(k)) {
      throw std::invalid_argument(
          "DistortionCoefficients: coefficients must be finite");
    }
  }
  // Local injectivity of the distortion map over the working domain: the
  // Jacobian determinant must stay positive at every sample of a grid
  // spanning [-bound, bound]^2.
  const int n = kInjectivityGridSamples;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double x = -domain_bound + 2.0 * domain_bound * i / (n - 1);
      const double y = -domain_bound + 2.0 * domain_bound * j / (n - 1);
      const Mat3 J = distortion_jacobian2x2_padded(Vec2(x, y), *this);
      const double det = J(0, 0) * J(1, 1) - J(0, 1) * J(1, 0);
      if (!(det > 0.0)) {
        throw std::invalid_argument(
            "DistortionCoefficients: map not injective over the configured "
            "domain (Jacobian determinant <= 0)");
      }
    }
  }
}

CameraModel make_square_sensor_camera(double focal_mm, ImageSize size,
                                      double sensor_mm, double alpha,
                                      const DistortionCoefficients& dist) {
  const double pitch_mm = sensor_mm / size.width;  // square pixels
  const double f_px = focal_mm / pitch_mm;
  CameraModel cam;
  cam.intrinsics = CameraIntrinsics(f_px, f_px, size.width / 2.0,
                                    size.height / 2.0, alpha, size);
  cam.distortion = dist;
  return cam;
}

}  // namespace varibase::geometry
