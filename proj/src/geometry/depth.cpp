#include "varibase/geometry/depth.hpp"

#include <stdexcept>

#include "varibase/kernels/kernels.hpp"

namespace varibase::geometry {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be > 0");
  }
}

}  // namespace

double depth_from_disparity(double d, double b, double f) {
  require_positive(b, "baseline");
  require_positive(f, "focal length");
  if (!(d > 0.0)) {
    throw std::invalid_argument("disparity must be > 0");
  }
  return b * f / d;
}

double disparity_from_depth(double z, double b, double f) {
  require_positive(b, "baseline");
  require_positive(f, "focal length");
  if (!(z > 0.0)) {
    throw std::invalid_argument("depth must be > 0");
  }
  return b * f / z;
}

DepthImage depth_image_from_disparity(const DisparityImage& disparity,
                                      double b, double f) {
  require_positive(b, "baseline");
  require_positive(f, "focal length");
  DepthImage depth(disparity.width(), disparity.height());
  kernels::reciprocal_scaled(disparity.data(), disparity.valid_data(), b * f,
                             disparity.pixel_count(), depth.data(),
                             depth.valid_data());
  return depth;
}

DisparityImage disparity_image_from_depth(const DepthImage& depth, double b,
                                          double f) {
  require_positive(b, "baseline");
  require_positive(f, "focal length");
  DisparityImage disparity(depth.width(), depth.height());
  kernels::reciprocal_scaled(depth.data(), depth.valid_data(), b * f,
                             depth.pixel_count(), disparity.data(),
                             disparity.valid_data());
  return disparity;
}

double depth_error(double z, double b, double f, double eps_d) {
  require_positive(z, "depth");
  require_positive(b, "baseline");
  require_positive(f, "focal length");
  return z * z * eps_d / (b * f);
}

}  // namespace varibase::geometry
