#include "varibase/sim/block_match.hpp"

#include <stdexcept>
#include <vector>

#include "varibase/kernels/kernels.hpp"

namespace varibase::sim {

namespace {

// One matching direction. sign=+1: reference is the left image, candidates
// shift left in the right image. sign=-1: reference is the right image,
// candidates shift right in the left image.
// TODO: incremental column sums would drop the window-height factor from the
// cost loop; not worth it at 128x128 test sizes.
DisparityImage match_direction(const Image<double>& ref,
                               const Image<double>& other, int sign,
                               const BlockMatchOptions& opts) {
  const int w = ref.width();
  const int h = ref.height();
  const int half = opts.window / 2;
  DisparityImage disp(w, h);
  std::vector<double> costs(opts.max_disparity + 1);

  for (int v = half; v < h - half; ++v) {
    for (int u = half; u < w - half; ++u) {
      int d_max = opts.max_disparity;
      if (sign > 0) {
        d_max = std::min(d_max, u - half);
      } else {
        d_max = std::min(d_max, w - 1 - half - u);
      }
      if (d_max < 0) continue;

      int best_d = -1;
      double best_cost = std::numeric_limits<double>::infinity();
      for (int d = 0; d <= d_max; ++d) {
        double cost = 0.0;
        for (int j = -half; j <= half; ++j) {
          const double* a = ref.data() + ref.index(u - half, v + j);
          const double* b =
              other.data() + other.index(u - sign * d - half, v + j);
          cost += kernels::sad(a, b, opts.window);
        }
        costs[d] = cost;
        if (cost < best_cost) {
          best_cost = cost;
          best_d = d;
        }
      }

      // Textureless: cost curve flat across most of the range.
      int ties = 0;
      for (int d = 0; d <= d_max; ++d) {
        if (costs[d] <= best_cost + opts.tie_epsilon) ++ties;
      }
      if (d_max > 0 && ties > opts.tie_fraction * (d_max + 1)) continue;

      disp.set(u, v, best_d);
    }
  }
  return disp;
}

}  // namespace

DisparityImage block_match(const Image<double>& left,
                           const Image<double>& right,
                           const BlockMatchOptions& opts) {
  if (opts.window % 2 == 0 || opts.window < 1) {
    throw std::invalid_argument("block_match: window must be odd");
  }
  if (left.size() != right.size()) {
    throw std::invalid_argument("block_match: image sizes differ");
  }

  DisparityImage disp = match_direction(left, right, +1, opts);
  if (!opts.left_right_check) return disp;

  const DisparityImage disp_right = match_direction(right, left, -1, opts);
  for (int v = 0; v < disp.height(); ++v) {
    for (int u = 0; u < disp.width(); ++u) {
      if (!disp.valid(u, v)) continue;
      const int d = static_cast<int>(disp.value(u, v));
      const int ur = u - d;
      if (ur < 0 || !disp_right.valid(ur, v) ||
          std::abs(disp_right.value(ur, v) - d) >
              opts.left_right_tolerance_px) {
        disp.set_invalid(u, v);
      }
    }
  }
  return disp;
}

}  // namespace varibase::sim
