#pragma once

#include <string>

#include "varibase/core/image.hpp"
#include "varibase/geometry/camera.hpp"
#include "varibase/geometry/rectification.hpp"

namespace varibase::errors {

enum class Parameter {
  kFocal,  // fx and fy together
  kAlpha,
  kK1,
  kK2,
  kK3,
  kK4,
  kK5,
  kTx,
  kTy,
  kTz,
  kRoll,   // about x
  kPitch,  // about y
  kYaw,    // about z
};

const char* parameter_name(Parameter p);
bool is_intrinsic(Parameter p);
bool is_rotation(Parameter p);

enum class Side { kLeft, kRight, kBoth };

/// One single-parameter perturbation: percent additive error for scalars
/// (estimate = nominal * (1 + magnitude/100)), degrees for rotations
/// (estimate = nominal * R_e, intrinsic Z-Y-X composition). Construction
/// rejects non-finite magnitudes, |rotation| > 10 deg and |scalar| > 100%.
struct PerturbationSpec {
  Parameter parameter = Parameter::kFocal;
  double magnitude = 0.0;
  Side side = Side::kBoth;  // bookkeeping only; fields are per camera/rig

  PerturbationSpec() = default;
  PerturbationSpec(Parameter parameter, double magnitude,
                   Side side = Side::kBoth);
};

/// Per-pixel |x_hat - x_tilde| magnitudes, split by coordinate, plus the
/// summary statistics every report row is built from.
struct ErrorField {
  Image<double> ex;  // pixels
  Image<double> ey;  // pixels
  double ex_max = 0.0;
  double ey_max = 0.0;
  double ex_mean = 0.0;
  double ey_mean = 0.0;

  /// ey_max / ex_max; 0 when ey_max is 0, NaN when both are 0.
  double ratio_y_over_x() const;

  static ErrorField from_grids(Image<double> ex, Image<double> ey);
};

struct StereoErrorField {
  ErrorField left;
  ErrorField right;
};

/// Minimal rig description for the extrinsic analysis.
struct StereoRig {
  geometry::CameraModel left;
  geometry::CameraModel right;
  geometry::StereoExtrinsics extrinsics;
};

/// Pixel-location error caused by using a perturbed intrinsic/distortion
/// estimate in the correction map.
///
/// The pixel lattice is pulled back to normalized coordinates through the
/// true affine intrinsics once; each grid point is then pushed through the
/// distortion-projection map with the nominal parameters (x_hat) and with
/// the perturbed estimate (x_tilde). The field is the coordinate-wise
/// absolute difference. Zero magnitude gives an identically zero field, and
/// a skew perturbation cannot move y (the skew couples into x only).
ErrorField intrinsic_error_field(const PerturbationSpec& spec,
                                 const geometry::CameraModel& camera,
                                 ImageSize image_size);

/// Displacement of rectified pixel locations when the rectification pair is
/// rebuilt from perturbed extrinsics ({R * R_e} or component-scaled T),
/// reported per camera. Rotation perturbations leave the left field
/// identically zero (the rectifying rotation depends on T alone).
StereoErrorField extrinsic_error_field(const PerturbationSpec& spec,
                                       const StereoRig& rig,
                                       ImageSize image_size);

/// R_e for a rotation parameter/magnitude (degrees), intrinsic Z-Y-X order.
Mat3 rotation_perturbation(Parameter parameter, double degrees);

}  // namespace varibase::errors
