#pragma once

#include "varibase/core/image.hpp"

namespace varibase::geometry {

/// Z = b*f/d for a single disparity. Preconditions b > 0, f > 0; throws
/// std::invalid_argument when d <= 0.
double depth_from_disparity(double disparity_px, double baseline_m,
                            double focal_px);

/// d = b*f/Z for a single depth. Throws std::invalid_argument when Z <= 0.
double disparity_from_depth(double depth_m, double baseline_m, double focal_px);

/// Per-pixel Z = b*f/d; invalid or non-positive disparities map to invalid
/// depth pixels.
DepthImage depth_image_from_disparity(const DisparityImage& disparity,
                                      double baseline_m, double focal_px);

/// Per-pixel d = b*f/Z; invalid or non-positive depths map to invalid
/// disparity pixels.
DisparityImage disparity_image_from_depth(const DepthImage& depth,
                                          double baseline_m, double focal_px);

/// Depth error induced by a disparity error: eps_z = Z^2 * eps_d / (b*f).
/// Quadratic in depth; all arguments except eps_d must be positive.
double depth_error(double depth_m, double baseline_m, double focal_px,
                   double disparity_error_px);

}  // namespace varibase::geometry
