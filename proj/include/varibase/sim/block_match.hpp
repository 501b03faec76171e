#pragma once

#include "varibase/core/image.hpp"

namespace varibase::sim {

struct BlockMatchOptions {
  int window = 9;  // odd
  int max_disparity = 48;
  /// Textureless rejection: a pixel whose cost curve ties (within
  /// tie_epsilon) across more than this fraction of the search range is
  /// marked invalid.
  double tie_fraction = 0.5;
  double tie_epsilon = 1e-9;
  bool left_right_check = true;
  double left_right_tolerance_px = 1.0;
};

/// Sum-of-absolute-differences block matching over a rectified pair.
/// Integer disparities in [0, max_disparity]; pixels failing the
/// left-right consistency check (occlusions) or the textureless test are
/// invalid, as are borders where the window or search range does not fit.
/// Throws std::invalid_argument for an even window or mismatched sizes.
DisparityImage block_match(const Image<double>& left,
                           const Image<double>& right,
                           const BlockMatchOptions& opts = {});

}  // namespace varibase::sim
