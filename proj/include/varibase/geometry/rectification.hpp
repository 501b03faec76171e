#pragma once

#include "varibase/geometry/camera.hpp"

namespace varibase::geometry {

/// Rigid transform between the two cameras of a rig, left camera as origin.
///
/// Convention: `translation` is the right camera center expressed in the
/// left camera frame (its norm is the baseline); `rotation` maps left-frame
/// directions into the right camera frame. A left-frame point p maps to the
/// right frame as  p_R = rotation * (p - translation).
struct StereoExtrinsics {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  StereoExtrinsics() = default;
  /// Throws std::invalid_argument unless R^T R = I and det R = +1 within
  /// 1e-9 and the translation norm is positive.
  StereoExtrinsics(const Mat3& rotation, const Vec3& translation);

  double baseline() const { return translation.norm(); }
};

/// Pure-rotation rectification homographies and the rectifying rotation.
///
/// h_left  = K_L * r_rect * K_L^-1
/// h_right = K_R * r_rect * R^T * K_R^-1
/// with r_rect rows r_x = T/|T|, r_z from Gram-Schmidt of [0,0,1] against
/// r_x, r_y = r_z x r_x. After application, co-visible points share rectified
/// row coordinates.
struct RectificationPair {
  Mat3 h_left = Mat3::Identity();
  Mat3 h_right = Mat3::Identity();
  Mat3 r_rect = Mat3::Identity();
};

/// Builds the rectification pair. Throws DegenerateGeometryError when the
/// baseline is parallel to the optical axis (Gram-Schmidt residual < 1e-12);
/// the rig is physically horizontal and no fallback frame is invented.
RectificationPair rectification_pair(const CameraIntrinsics& intr_left,
                                     const CameraIntrinsics& intr_right,
                                     const StereoExtrinsics& ext);

/// Applies a rectification homography to an (undistorted) pixel.
Vec2 apply_homography(const Mat3& h, const Vec2& pixel);

}  // namespace varibase::geometry
