#include "varibase/rig/dual_quaternion.hpp"

#include <cmath>
#include <stdexcept>

namespace varibase::rig {

namespace {

Quat quat_add(const Quat& a, const Quat& b) {
  return Quat(a.w() + b.w(), a.x() + b.x(), a.y() + b.y(), a.z() + b.z());
}

Quat quat_scale(const Quat& q, double s) {
  return Quat(s * q.w(), s * q.x(), s * q.y(), s * q.z());
}

Quat quat_negate(const Quat& q) { return quat_scale(q, -1.0); }

}  // namespace

DualQuaternionPose DualQuaternionPose::canonicalized() const {
  if (real.w() < 0.0) {
    return DualQuaternionPose{quat_negate(real), quat_negate(dual)};
  }
  return *this;
}

DualQuaternionPose pose_to_dual_quaternion(
    const geometry::StereoExtrinsics& ext) {
  const Mat3& R = ext.rotation;
  if ((R.transpose() * R - Mat3::Identity()).norm() > 1e-9 ||
      std::abs(R.determinant() - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "pose_to_dual_quaternion: rotation not orthonormal");
  }
  DualQuaternionPose dq;
  dq.real = Quat(R).normalized();
  const Quat t(0.0, ext.translation.x(), ext.translation.y(),
               ext.translation.z());
  dq.dual = quat_scale(t * dq.real, 0.5);
  return dq.canonicalized();
}

geometry::StereoExtrinsics dual_quaternion_to_pose(
    const DualQuaternionPose& dq) {
  // Assigns fields directly: a dual quaternion may encode a pure rotation
  // (zero translation), which the validating extrinsics constructor rejects.
  geometry::StereoExtrinsics ext;
  ext.rotation = dq.real.normalized().toRotationMatrix();
  const Quat t = quat_scale(dq.dual * dq.real.conjugate(), 2.0);
  ext.translation = Vec3(t.x(), t.y(), t.z());
  return ext;
}

DualQuaternionPose dq_multiply(const DualQuaternionPose& a,
                               const DualQuaternionPose& b) {
  DualQuaternionPose out;
  out.real = a.real * b.real;
  out.dual = quat_add(a.real * b.dual, a.dual * b.real);
  return out;
}

DualQuaternionPose dq_conjugate(const DualQuaternionPose& dq) {
  return DualQuaternionPose{dq.real.conjugate(), dq.dual.conjugate()};
}

DualQuaternionPose dq_pow(const DualQuaternionPose& dq, double t) {
  const Vec3 v_r = dq.real.vec();
  const double sin_half = v_r.norm();
  const double cos_half = dq.real.w();
  const double angle = 2.0 * std::atan2(sin_half, cos_half);

  if (std::abs(angle) < kPureTranslationAngle) {
    // Pure translation: the screw axis degenerates; interpolate the dual
    // part linearly.
    DualQuaternionPose out;
    out.real = Quat::Identity();
    out.dual = quat_scale(dq.dual, t);
    out.dual.w() = 0.0;
    return out;
  }

  const Vec3 axis = v_r / sin_half;
  const double pitch = -2.0 * dq.dual.w() / sin_half;
  const Vec3 moment =
      (dq.dual.vec() - 0.5 * pitch * cos_half * axis) / sin_half;

  const double half = 0.5 * t * angle;
  const double s = std::sin(half);
  const double c = std::cos(half);
  const double d_half = 0.5 * t * pitch;

  DualQuaternionPose out;
  out.real = Quat(c, s * axis.x(), s * axis.y(), s * axis.z());
  const Vec3 dual_vec = s * moment + d_half * c * axis;
  out.dual = Quat(-d_half * s, dual_vec.x(), dual_vec.y(), dual_vec.z());
  return out;
}

DualQuaternionPose sclerp(const DualQuaternionPose& a,
                          const DualQuaternionPose& b, double t) {
  if (t < 0.0 || t > 1.0) {
    throw std::invalid_argument("sclerp: t must be in [0, 1]");
  }
  // Shorter-path sign resolution before interpolating.
  DualQuaternionPose bc = b;
  if (a.real.w() * b.real.w() + a.real.vec().dot(b.real.vec()) < 0.0) {
    bc.real = quat_negate(bc.real);
    bc.dual = quat_negate(bc.dual);
  }
  if (t == 0.0) return a;
  if (t == 1.0) return bc;
  const DualQuaternionPose rel = dq_multiply(dq_conjugate(a), bc);
  return dq_multiply(a, dq_pow(rel, t));
}

}  // namespace varibase::rig
