#include "varibase/geometry/rectification.hpp"

#include <stdexcept>

#include "varibase/core/errors.hpp"

namespace varibase::geometry {

namespace {

Mat3 intrinsics_matrix(const CameraIntrinsics& k) {
  Mat3 K;
  K << k.fx, k.alpha * k.fx, k.cx, 0.0, k.fy, k.cy, 0.0, 0.0, 1.0;
  return K;
}

}  // namespace

StereoExtrinsics::StereoExtrinsics(const Mat3& R, const Vec3& T)
    : rotation(R), translation(T) {
  if ((R.transpose() * R - Mat3::Identity()).norm() > 1e-9 ||
      std::abs(R.determinant() - 1.0) > 1e-9) {
    throw std::invalid_argument("StereoExtrinsics: rotation not orthonormal");
  }
  if (!(T.norm() > 0.0)) {
    throw std::invalid_argument("StereoExtrinsics: translation norm must be > 0");
  }
}

RectificationPair rectification_pair(const CameraIntrinsics& intr_left,
                                     const CameraIntrinsics& intr_right,
                                     const StereoExtrinsics& ext) {
  const Vec3 r_x = ext.translation / ext.translation.norm();
  const Vec3 z_hint(0.0, 0.0, 1.0);
  const Vec3 z_proj = z_hint - z_hint.dot(r_x) * r_x;
  if (z_proj.norm() < 1e-12) {
    throw DegenerateGeometryError(
        "rectification_pair: baseline parallel to the optical axis");
  }
  const Vec3 r_z = z_proj / z_proj.norm();
  const Vec3 r_y = r_z.cross(r_x);

  RectificationPair pair;
  pair.r_rect.row(0) = r_x;
  pair.r_rect.row(1) = r_y;
  pair.r_rect.row(2) = r_z;

  const Mat3 KL = intrinsics_matrix(intr_left);
  const Mat3 KR = intrinsics_matrix(intr_right);
  pair.h_left = KL * pair.r_rect * KL.inverse();
  pair.h_right = KR * pair.r_rect * ext.rotation.transpose() * KR.inverse();
  return pair;
}

Vec2 apply_homography(const Mat3& h, const Vec2& pixel) {
  const Vec3 mapped = h * Vec3(pixel.x(), pixel.y(), 1.0);
  return Vec2(mapped.x() / mapped.z(), mapped.y() / mapped.z());
}

}  // namespace varibase::geometry
