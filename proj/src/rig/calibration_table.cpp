#include "varibase/rig/calibration_table.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "varibase/core/errors.hpp"
#include "varibase/core/random.hpp"

namespace varibase::rig {

namespace {

geometry::CameraIntrinsics lerp_intrinsics(const geometry::CameraIntrinsics& a,
                                           const geometry::CameraIntrinsics& b,
                                           double t) {
  geometry::CameraIntrinsics out;
  out.fx = a.fx + t * (b.fx - a.fx);
  out.fy = a.fy + t * (b.fy - a.fy);
  out.cx = a.cx + t * (b.cx - a.cx);
  out.cy = a.cy + t * (b.cy - a.cy);
  out.alpha = a.alpha + t * (b.alpha - a.alpha);
  return out;
}

geometry::DistortionCoefficients lerp_distortion(
    const geometry::DistortionCoefficients& a,
    const geometry::DistortionCoefficients& b, double t) {
  geometry::DistortionCoefficients out;
  out.k1 = a.k1 + t * (b.k1 - a.k1);
  out.k2 = a.k2 + t * (b.k2 - a.k2);
  out.k3 = a.k3 + t * (b.k3 - a.k3);
  out.k4 = a.k4 + t * (b.k4 - a.k4);
  out.k5 = a.k5 + t * (b.k5 - a.k5);
  return out;
}

StereoCalibration entry_to_calibration(const CalibrationEntry& e) {
  StereoCalibration c;
  c.baseline_m = e.baseline_m;
  c.intrinsics_left = e.intrinsics_left;
  c.intrinsics_right = e.intrinsics_right;
  c.distortion_left = e.distortion_left;
  c.distortion_right = e.distortion_right;
  c.extrinsics = dual_quaternion_to_pose(e.extrinsics);
  return c;
}

}  // namespace

CalibrationTable::CalibrationTable(std::vector<CalibrationEntry> entries)
    : entries_(std::move(entries)) {
  validate(entries_);
}

void CalibrationTable::validate(const std::vector<CalibrationEntry>& entries) {
  if (entries.size() < 2) {
    throw ConfigError("calibration table: needs at least 2 entries, has " +
                      std::to_string(entries.size()));
  }
  for (size_t i = 0; i < entries.size(); ++i) {
    const CalibrationEntry& e = entries[i];
    std::ostringstream where;
    where << "calibration table record " << i;
    if (!(e.baseline_m > 0.0)) {
      throw ConfigError(where.str() + ": baseline must be > 0");
    }
    if (i > 0 && !(e.baseline_m > entries[i - 1].baseline_m)) {
      throw ConfigError(where.str() + ": baselines must be strictly increasing");
    }
    if (std::abs(e.extrinsics.real_norm() - 1.0) > 1e-9 ||
        std::abs(e.extrinsics.orthogonality()) > 1e-9) {
      throw ConfigError(where.str() + ": extrinsics not a unit dual quaternion");
    }
    const double t_norm =
        dual_quaternion_to_pose(e.extrinsics).translation.norm();
    if (std::abs(t_norm - e.baseline_m) > 0.01 * e.baseline_m) {
      std::ostringstream msg;
      msg << where.str() << ": extrinsic translation norm " << t_norm
          << " differs from baseline key " << e.baseline_m
          << " by more than 1%";
      throw ConfigError(msg.str());
    }
  }
}

StereoCalibration CalibrationTable::interpolate(double b) const {
  if (b < min_baseline() || b > max_baseline()) {
    std::ostringstream msg;
    msg << "baseline " << b << " m outside calibration range ["
        << min_baseline() << ", " << max_baseline() << "] m";
    throw RangeError(msg.str());
  }
  // Stored keys return the entry untouched.
  const auto exact =
      std::find_if(entries_.begin(), entries_.end(),
                   [b](const CalibrationEntry& e) { return e.baseline_m == b; });
  if (exact != entries_.end()) return entry_to_calibration(*exact);

  const auto hi = std::upper_bound(
      entries_.begin(), entries_.end(), b,
      [](double v, const CalibrationEntry& e) { return v < e.baseline_m; });
  const auto lo = hi - 1;
  const double t = (b - lo->baseline_m) / (hi->baseline_m - lo->baseline_m);

  StereoCalibration c;
  c.baseline_m = b;
  c.intrinsics_left = lerp_intrinsics(lo->intrinsics_left, hi->intrinsics_left, t);
  c.intrinsics_right =
      lerp_intrinsics(lo->intrinsics_right, hi->intrinsics_right, t);
  c.distortion_left = lerp_distortion(lo->distortion_left, hi->distortion_left, t);
  c.distortion_right =
      lerp_distortion(lo->distortion_right, hi->distortion_right, t);
  c.extrinsics =
      dual_quaternion_to_pose(sclerp(lo->extrinsics, hi->extrinsics, t));
  return c;
}

CalibrationTable make_synthetic_table(const geometry::CameraModel& camera,
                                      double min_baseline, double max_baseline,
                                      int count, double jitter_deg,
                                      uint64_t seed) {
  Rng rng(seed ^ 0x5ca1ab1eULL);
  std::vector<CalibrationEntry> entries;
  entries.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double b =
        min_baseline + (max_baseline - min_baseline) * i / (count - 1);
    Mat3 R = Mat3::Identity();
    if (jitter_deg > 0.0) {
      const double s = M_PI / 180.0;
      const double rx = rng.uniform(-jitter_deg, jitter_deg) * s;
      const double ry = rng.uniform(-jitter_deg, jitter_deg) * s;
      const double rz = rng.uniform(-jitter_deg, jitter_deg) * s;
      R = (Eigen::AngleAxisd(rz, Vec3::UnitZ()) *
           Eigen::AngleAxisd(ry, Vec3::UnitY()) *
           Eigen::AngleAxisd(rx, Vec3::UnitX()))
              .toRotationMatrix();
    }
    CalibrationEntry e;
    e.baseline_m = b;
    e.intrinsics_left = camera.intrinsics;
    e.intrinsics_right = camera.intrinsics;
    e.distortion_left = camera.distortion;
    e.distortion_right = camera.distortion;
    e.extrinsics = pose_to_dual_quaternion(
        geometry::StereoExtrinsics(R, Vec3(b, 0.0, 0.0)));
    entries.push_back(e);
  }
  return CalibrationTable(std::move(entries));
}

}  // namespace varibase::rig
