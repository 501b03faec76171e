#pragma once

#include <Eigen/Dense>

namespace varibase {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;

struct ImageSize {
  int width = 0;
  int height = 0;

  bool operator==(const ImageSize&) const = default;
  long long pixel_count() const { return static_cast<long long>(width) * height; }
};

}  // namespace varibase
