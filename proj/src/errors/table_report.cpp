#include "varibase/errors/table_report.hpp"

#include <algorithm>
#include <cmath>

namespace varibase::errors {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

geometry::CameraModel analysis_camera(const AnalysisSetup& setup,
                                      double focal_mm) {
  return geometry::make_square_sensor_camera(focal_mm, setup.image_size,
                                             setup.sensor_mm,
                                             setup.nominal_alpha,
                                             setup.nominal_distortion);
}

StereoRig analysis_rig(const AnalysisSetup& setup, double focal_mm) {
  StereoRig rig;
  rig.left = analysis_camera(setup, focal_mm);
  rig.right = rig.left;
  rig.extrinsics =
      geometry::StereoExtrinsics(Mat3::Identity(), setup.nominal_translation);
  return rig;
}

bool ErrorRatioReport::all_within() const {
  for (const RatioRow& r : intrinsic_rows) {
    if (!r.within) return false;
  }
  for (const RatioRow& r : extrinsic_rows) {
    if (!r.within) return false;
  }
  return true;
}

ErrorRatioReport error_ratio_report(const AnalysisSetup& setup) {
  ErrorRatioReport report;
  report.setup = setup;

  struct IntrinsicRowSpec {
    Parameter p;
    double lo, hi;
    bool exact;  // alpha: e_y must vanish identically
  };
  const IntrinsicRowSpec intrinsic_rows[] = {
      {Parameter::kFocal, 0.7, 1.3, false},
      {Parameter::kAlpha, 0.0, 0.0, true},
      {Parameter::kK1, 0.7, 1.3, false},
      {Parameter::kK2, 0.7, 1.3, false},
      {Parameter::kK3, 1.5, 2.5, false},
      {Parameter::kK4, 1.0 / 2.5, 1.0 / 1.5, false},
      {Parameter::kK5, 0.7, 1.3, false},
  };

  for (const auto& row_spec : intrinsic_rows) {
    RatioRow row;
    row.parameter = row_spec.p;
    row.band_lo = row_spec.lo;
    row.band_hi = row_spec.hi;
    row.exact = row_spec.exact;
    for (double f_mm : setup.focal_lengths_mm) {
      const geometry::CameraModel cam = analysis_camera(setup, f_mm);
      const PerturbationSpec spec(row_spec.p, setup.scalar_magnitude_percent);
      const ErrorField field = intrinsic_error_field(spec, cam, setup.image_size);
      row.per_focal_ratio.push_back(row_spec.exact ? field.ey_max
                                                   : field.ratio_y_over_x());
    }
    row.ratio = median(row.per_focal_ratio);
    row.within = row_spec.exact
                     ? row.ratio == 0.0
                     : row.ratio >= row.band_lo && row.ratio <= row.band_hi;
    report.intrinsic_rows.push_back(std::move(row));
  }

  struct ExtrinsicRowSpec {
    Parameter p;
    double target;  // left/right ratio, exact
  };
  const ExtrinsicRowSpec extrinsic_rows[] = {
      {Parameter::kTx, 1.0},   {Parameter::kTy, 1.0},
      {Parameter::kTz, 1.0},   {Parameter::kRoll, 0.0},
      {Parameter::kPitch, 0.0}, {Parameter::kYaw, 0.0},
  };

  for (const auto& row_spec : extrinsic_rows) {
    RatioRow row;
    row.parameter = row_spec.p;
    row.band_lo = row.band_hi = row_spec.target;
    row.exact = true;
    bool within = true;
    for (double f_mm : setup.focal_lengths_mm) {
      const StereoRig rig = analysis_rig(setup, f_mm);
      const double magnitude = is_rotation(row_spec.p)
                                   ? setup.rotation_magnitude_deg
                                   : setup.scalar_magnitude_percent;
      const PerturbationSpec spec(row_spec.p, magnitude);
      const StereoErrorField field =
          extrinsic_error_field(spec, rig, setup.image_size);
      const double rx = field.right.ex_max > 0.0
                            ? field.left.ex_max / field.right.ex_max
                            : std::numeric_limits<double>::quiet_NaN();
      const double ry = field.right.ey_max > 0.0
                            ? field.left.ey_max / field.right.ey_max
                            : std::numeric_limits<double>::quiet_NaN();
      row.per_focal_ratio.push_back(rx);
      within = within && std::abs(rx - row_spec.target) <= 1e-6 &&
               std::abs(ry - row_spec.target) <= 1e-6;
    }
    row.ratio = median(row.per_focal_ratio);
    row.within = within;
    report.extrinsic_rows.push_back(std::move(row));
  }

  return report;
}

std::vector<SweepPoint> magnitude_sweep(Parameter parameter, double focal_mm,
                                        const std::vector<double>& magnitudes,
                                        const AnalysisSetup& setup) {
  std::vector<SweepPoint> sweep;
  sweep.reserve(magnitudes.size());
  for (double m : magnitudes) {
    const PerturbationSpec spec(parameter, m);
    ErrorField field;
    if (is_intrinsic(parameter)) {
      field = intrinsic_error_field(spec, analysis_camera(setup, focal_mm),
                                    setup.image_size);
    } else {
      field = extrinsic_error_field(spec, analysis_rig(setup, focal_mm),
                                    setup.image_size)
                  .right;
    }
    sweep.push_back({m, field.ex_max, field.ey_max, field.ex_mean, field.ey_mean});
  }
  return sweep;
}

}  // namespace varibase::errors
