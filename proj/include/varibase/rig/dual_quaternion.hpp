#pragma once

#include "varibase/geometry/rectification.hpp"

namespace varibase::rig {

/// Unit dual quaternion encoding a rigid pose {R, T}.
///
/// real: unit quaternion of R (scalar part canonicalized >= 0 on
/// construction); dual = 0.5 * (0, T) * real. Unit conditions |real| = 1 and
/// real . dual = 0 hold within 1e-9 for every value produced here.
struct DualQuaternionPose {
  Quat real = Quat::Identity();
  Quat dual = Quat(0.0, 0.0, 0.0, 0.0);

  double real_norm() const { return real.norm(); }
  double orthogonality() const {
    return real.w() * dual.w() + real.vec().dot(dual.vec());
  }

  /// Flips the overall sign so the real scalar part is >= 0 (both signs
  /// encode the same pose).
  DualQuaternionPose canonicalized() const;
};

/// Converts extrinsics to the dual-quaternion form. Throws
/// std::invalid_argument when the rotation is not orthonormal.
DualQuaternionPose pose_to_dual_quaternion(
    const geometry::StereoExtrinsics& ext);

/// Inverse map; round trip recovers R within 1e-9 (Frobenius) and T within
/// 1e-9 m.
geometry::StereoExtrinsics dual_quaternion_to_pose(
    const DualQuaternionPose& dq);

/// Screw linear interpolation a * (a^-1 b)^t for t in [0,1].
///
/// The relative transform is decomposed into its screw parameters (angle,
/// pitch, axis, moment) and scaled by t, so the pose travels along the
/// constant-screw path. Antipodal ambiguity is resolved by sign
/// canonicalization before interpolating; a relative rotation below
/// kPureTranslationAngle falls back to linear dual-part interpolation
/// (straight-line translation). Endpoints are returned exactly.
DualQuaternionPose sclerp(const DualQuaternionPose& a,
                          const DualQuaternionPose& b, double t);

inline constexpr double kPureTranslationAngle = 1e-8;  // radians

// Dual-quaternion algebra (Hamilton products on both parts).
DualQuaternionPose dq_multiply(const DualQuaternionPose& lhs,
                               const DualQuaternionPose& rhs);
DualQuaternionPose dq_conjugate(const DualQuaternionPose& dq);
DualQuaternionPose dq_pow(const DualQuaternionPose& dq, double t);

}  // namespace varibase::rig
