#include "varibase/errors/perturbation.hpp"

#include <cmath>
#include <stdexcept>

#include "varibase/geometry/distortion.hpp"
#include "varibase/kernels/kernels.hpp"

namespace varibase::errors {

const char* parameter_name(Parameter p) {
  switch (p) {
    case Parameter::kFocal: return "f";
    case Parameter::kAlpha: return "alpha";
    case Parameter::kK1: return "k1";
    case Parameter::kK2: return "k2";
    case Parameter::kK3: return "k3";
    case Parameter::kK4: return "k4";
    case Parameter::kK5: return "k5";
    case Parameter::kTx: return "Tx";
    case Parameter::kTy: return "Ty";
    case Parameter::kTz: return "Tz";
    case Parameter::kRoll: return "roll";
    case Parameter::kPitch: return "pitch";
    case Parameter::kYaw: return "yaw";
  }
  return "?";
}

bool is_intrinsic(Parameter p) {
  switch (p) {
    case Parameter::kFocal:
    case Parameter::kAlpha:
    case Parameter::kK1:
    case Parameter::kK2:
    case Parameter::kK3:
    case Parameter::kK4:
    case Parameter::kK5:
      return true;
    default:
      return false;
  }
}

bool is_rotation(Parameter p) {
  return p == Parameter::kRoll || p == Parameter::kPitch ||
         p == Parameter::kYaw;
}

PerturbationSpec::PerturbationSpec(Parameter parameter_, double magnitude_,
                                   Side side_)
    : parameter(parameter_), magnitude(magnitude_), side(side_) {
  if (!std::isfinite(magnitude)) {
    throw std::invalid_argument("PerturbationSpec: magnitude must be finite");
  }
  if (is_rotation(parameter)) {
    if (std::abs(magnitude) > 10.0) {
      throw std::invalid_argument(
          "PerturbationSpec: rotation magnitude limited to 10 degrees");
    }
  } else if (std::abs(magnitude) > 100.0) {
    throw std::invalid_argument(
        "PerturbationSpec: scalar magnitude limited to 100 percent");
  }
}

double ErrorField::ratio_y_over_x() const {
  if (ey_max == 0.0 && ex_max == 0.0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (ey_max == 0.0) return 0.0;
  return ey_max / ex_max;
}

ErrorField ErrorField::from_grids(Image<double> ex, Image<double> ey) {
  ErrorField f;
  const size_t n = ex.pixel_count();
  f.ex_max = kernels::max_masked(ex.data(), ex.valid_data(), n);
  f.ey_max = kernels::max_masked(ey.data(), ey.valid_data(), n);
  f.ex_mean = kernels::sum_masked(ex.data(), ex.valid_data(), n) / n;
  f.ey_mean = kernels::sum_masked(ey.data(), ey.valid_data(), n) / n;
  f.ex = std::move(ex);
  f.ey = std::move(ey);
  return f;
}

Mat3 rotation_perturbation(Parameter parameter, double degrees) {
  const double rad = degrees * M_PI / 180.0;
  switch (parameter) {
    case Parameter::kRoll:
      return Eigen::AngleAxisd(rad, Vec3::UnitX()).toRotationMatrix();
    case Parameter::kPitch:
      return Eigen::AngleAxisd(rad, Vec3::UnitY()).toRotationMatrix();
    case Parameter::kYaw:
      return Eigen::AngleAxisd(rad, Vec3::UnitZ()).toRotationMatrix();
    default:
      throw std::invalid_argument("rotation_perturbation: not a rotation");
  }
}

namespace {

geometry::CameraModel perturb_camera(const geometry::CameraModel& cam,
                                     Parameter p, double percent) {
  const double scale = 1.0 + percent / 100.0;
  geometry::CameraModel out = cam;
  switch (p) {
    case Parameter::kFocal:
      out.intrinsics.fx *= scale;
      out.intrinsics.fy *= scale;
      break;
    case Parameter::kAlpha: out.intrinsics.alpha *= scale; break;
    case Parameter::kK1: out.distortion.k1 *= scale; break;
    case Parameter::kK2: out.distortion.k2 *= scale; break;
    case Parameter::kK3: out.distortion.k3 *= scale; break;
    case Parameter::kK4: out.distortion.k4 *= scale; break;
    case Parameter::kK5: out.distortion.k5 *= scale; break;
    default:
      throw std::invalid_argument("intrinsic_error_field: extrinsic parameter");
  }
  return out;
}

}  // namespace

ErrorField intrinsic_error_field(const PerturbationSpec& spec,
                                 const geometry::CameraModel& camera,
                                 ImageSize image_size) {
  if (!is_intrinsic(spec.parameter)) {
    throw std::invalid_argument(
        "intrinsic_error_field: spec must target an intrinsic/distortion "
        "parameter");
  }
  const geometry::CameraModel perturbed =
      perturb_camera(camera, spec.parameter, spec.magnitude);

  Image<double> ex(image_size.width, image_size.height);
  Image<double> ey(image_size.width, image_size.height);
  for (int v = 0; v < image_size.height; ++v) {
    for (int u = 0; u < image_size.width; ++u) {
      const Vec2 n = geometry::pixel_to_normalized_affine(
          Vec2(u, v), camera.intrinsics);
      const Vec2 ideal = geometry::project_with_distortion(
          n, camera.distortion, camera.intrinsics);
      const Vec2 estimated = geometry::project_with_distortion(
          n, perturbed.distortion, perturbed.intrinsics);
      ex.set(u, v, std::abs(ideal.x() - estimated.x()));
      ey.set(u, v, std::abs(ideal.y() - estimated.y()));
    }
  }
  return ErrorField::from_grids(std::move(ex), std::move(ey));
}

StereoErrorField extrinsic_error_field(const PerturbationSpec& spec,
                                       const StereoRig& rig,
                                       ImageSize image_size) {
  if (is_intrinsic(spec.parameter)) {
    throw std::invalid_argument(
        "extrinsic_error_field: spec must target T or rotation");
  }

  geometry::StereoExtrinsics perturbed = rig.extrinsics;
  if (is_rotation(spec.parameter)) {
    perturbed.rotation = rig.extrinsics.rotation *
                         rotation_perturbation(spec.parameter, spec.magnitude);
  } else {
    const double scale = 1.0 + spec.magnitude / 100.0;
    const int axis = spec.parameter == Parameter::kTx   ? 0
                     : spec.parameter == Parameter::kTy ? 1
                                                        : 2;
    perturbed.translation(axis) *= scale;
  }

  const geometry::RectificationPair ideal = geometry::rectification_pair(
      rig.left.intrinsics, rig.right.intrinsics, rig.extrinsics);
  const geometry::RectificationPair estimated = geometry::rectification_pair(
      rig.left.intrinsics, rig.right.intrinsics, perturbed);

  auto field_for = [&](const Mat3& h_ideal, const Mat3& h_estimated) {
    Image<double> ex(image_size.width, image_size.height);
    Image<double> ey(image_size.width, image_size.height);
    for (int v = 0; v < image_size.height; ++v) {
      for (int u = 0; u < image_size.width; ++u) {
        const Vec2 p(u, v);
        const Vec2 a = geometry::apply_homography(h_ideal, p);
        const Vec2 b = geometry::apply_homography(h_estimated, p);
        ex.set(u, v, std::abs(a.x() - b.x()));
        ey.set(u, v, std::abs(a.y() - b.y()));
      }
    }
    return ErrorField::from_grids(std::move(ex), std::move(ey));
  };

  StereoErrorField out;
  out.left = field_for(ideal.h_left, estimated.h_left);
  out.right = field_for(ideal.h_right, estimated.h_right);
  return out;
}

}  // namespace varibase::errors
