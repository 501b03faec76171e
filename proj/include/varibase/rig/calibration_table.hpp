#pragma once

#include <vector>

#include "varibase/geometry/camera.hpp"
#include "varibase/rig/dual_quaternion.hpp"

namespace varibase::rig {

/// One calibrated operating point of the variable-baseline rig.
struct CalibrationEntry {
  double baseline_m = 0.0;
  geometry::CameraIntrinsics intrinsics_left;
  geometry::CameraIntrinsics intrinsics_right;
  geometry::DistortionCoefficients distortion_left;
  geometry::DistortionCoefficients distortion_right;
  DualQuaternionPose extrinsics;
};

/// Full stereo calibration at one (possibly interpolated) baseline.
struct StereoCalibration {
  double baseline_m = 0.0;
  geometry::CameraIntrinsics intrinsics_left;
  geometry::CameraIntrinsics intrinsics_right;
  geometry::DistortionCoefficients distortion_left;
  geometry::DistortionCoefficients distortion_right;
  geometry::StereoExtrinsics extrinsics;
};

/// Ordered calibration entries over the actuator's baseline range.
///
/// Invariants (validated by validate() and the file loader): baselines
/// strictly increasing, at least two entries, every entry's extrinsic
/// translation norm within 1% of its baseline key.
class CalibrationTable {
 public:
  CalibrationTable() = default;
  explicit CalibrationTable(std::vector<CalibrationEntry> entries);

  const std::vector<CalibrationEntry>& entries() const { return entries_; }
  double min_baseline() const { return entries_.front().baseline_m; }
  double max_baseline() const { return entries_.back().baseline_m; }

  /// Throws ConfigError naming the first violated invariant and its record
  /// index.
  static void validate(const std::vector<CalibrationEntry>& entries);

  /// Calibration at an arbitrary baseline inside the table range:
  /// extrinsics by sclerp between the bracketing entries with
  /// t = (b - b_lo)/(b_hi - b_lo), intrinsics and distortion linearly
  /// interpolated per coefficient. A stored key returns that entry exactly.
  /// Throws RangeError (naming the valid interval) outside the range.
  StereoCalibration interpolate(double baseline_m) const;

 private:
  std::vector<CalibrationEntry> entries_;
};

/// Synthetic ground-truth table standing in for checkerboard calibration:
/// `count` equally spaced baselines over [min_baseline, max_baseline] of an
/// ideal horizontal rig (identity rotation plus optional per-entry rotation
/// jitter, uniformly drawn within +/- jitter_deg about each axis).
CalibrationTable make_synthetic_table(const geometry::CameraModel& camera,
                                      double min_baseline, double max_baseline,
                                      int count, double jitter_deg = 0.0,
                                      uint64_t seed = 0);

}  // namespace varibase::rig
