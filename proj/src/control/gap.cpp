#include "varibase/control/gap.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace varibase::control {

namespace {

double median_of(std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
    m = 0.5 * (m + v[mid - 1]);
  }
  return m;
}

Vec2 coordinate_median(const Image<uint8_t>& mask) {
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(mask.count_valid());
  ys.reserve(mask.count_valid());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.valid(x, y)) {
        xs.push_back(x);
        ys.push_back(y);
      }
    }
  }
  return Vec2(median_of(xs), median_of(ys));
}

double overlap_fraction(const Image<uint8_t>& reference,
                        const Image<uint8_t>& candidate) {
  size_t ref_count = 0;
  size_t both = 0;
  for (int y = 0; y < reference.height(); ++y) {
    for (int x = 0; x < reference.width(); ++x) {
      if (reference.valid(x, y)) {
        ++ref_count;
        if (candidate.valid(x, y)) ++both;
      }
    }
  }
  return ref_count ? static_cast<double>(both) / ref_count : 0.0;
}

}  // namespace

std::optional<GapState> detect_gap(const DepthImage& depth,
                                   const GapConfig& config) {
  const size_t valid = depth.count_valid();
  if (valid < config.min_valid_fraction * depth.pixel_count()) {
    return std::nullopt;
  }

  std::vector<double> samples;
  samples.reserve(valid);
  for (int y = 0; y < depth.height(); ++y) {
    for (int x = 0; x < depth.width(); ++x) {
      if (depth.valid(x, y)) samples.push_back(depth.value(x, y));
    }
  }

  // 1D 2-means, initialized at the 10th/90th percentiles (deterministic).
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  double mu_near = sorted[sorted.size() / 10];
  double mu_far = sorted[sorted.size() - 1 - sorted.size() / 10];
  if (mu_near == mu_far) mu_far = mu_near + 1e-12;
  for (int it = 0; it < config.kmeans_max_iterations; ++it) {
    double sum_near = 0.0, sum_far = 0.0;
    size_t n_near = 0, n_far = 0;
    const double split = 0.5 * (mu_near + mu_far);
    for (double z : samples) {
      if (z <= split) {
        sum_near += z;
        ++n_near;
      } else {
        sum_far += z;
        ++n_far;
      }
    }
    if (n_near == 0 || n_far == 0) break;
    const double new_near = sum_near / n_near;
    const double new_far = sum_far / n_far;
    const bool converged =
        std::abs(new_near - mu_near) < 1e-12 && std::abs(new_far - mu_far) < 1e-12;
    mu_near = new_near;
    mu_far = new_far;
    if (converged) break;
  }

  // Within-cluster spreads for the bimodality test.
  const double split = 0.5 * (mu_near + mu_far);
  double ss_near = 0.0, ss_far = 0.0;
  size_t n_near = 0, n_far = 0;
  for (double z : samples) {
    if (z <= split) {
      ss_near += (z - mu_near) * (z - mu_near);
      ++n_near;
    } else {
      ss_far += (z - mu_far) * (z - mu_far);
      ++n_far;
    }
  }
  if (n_near == 0 || n_far == 0) return std::nullopt;
  const double spread = std::max(
      {std::sqrt(ss_near / n_near), std::sqrt(ss_far / n_far),
       config.spread_floor_rel * split});
  const double separation = mu_far - mu_near;
  if (separation < config.separation_factor * spread) {
    return std::nullopt;  // unimodal
  }

  GapState state;
  state.foreground = Image<uint8_t>(depth.width(), depth.height());
  state.background = Image<uint8_t>(depth.width(), depth.height());
  state.contour = Image<uint8_t>(depth.width(), depth.height());
  state.foreground_mean_m = mu_near;
  state.background_mean_m = mu_far;

  for (int y = 0; y < depth.height(); ++y) {
    for (int x = 0; x < depth.width(); ++x) {
      if (!depth.valid(x, y)) continue;
      if (depth.value(x, y) <= split) {
        state.foreground.set(x, y, 1);
      } else {
        state.background.set(x, y, 1);
      }
    }
  }

  // Contour: foreground pixels with a strong local depth gradient — the gap
  // outline on the near surface (one-sided differences at borders). Keeping
  // it on the foreground pins the contour depth set to the gap plane.
  const double grad_threshold = config.contour_gradient_factor * separation;
  std::vector<double> contour_depths;
  auto sample = [&](int x, int y, double fallback) {
    return depth.in_bounds(x, y) && depth.valid(x, y) ? depth.value(x, y)
                                                      : fallback;
  };
  for (int y = 0; y < depth.height(); ++y) {
    for (int x = 0; x < depth.width(); ++x) {
      if (!state.foreground.valid(x, y)) continue;
      const double z = depth.value(x, y);
      const double gx = std::max(std::abs(sample(x + 1, y, z) - z),
                                 std::abs(z - sample(x - 1, y, z)));
      const double gy = std::max(std::abs(sample(x, y + 1, z) - z),
                                 std::abs(z - sample(x, y - 1, z)));
      if (std::hypot(gx, gy) > grad_threshold) {
        state.contour.set(x, y, 1);
        contour_depths.push_back(z);
      }
    }
  }
  state.median_contour_depth_m = median_of(contour_depths);
  if (contour_depths.empty()) {
    state.median_contour_depth_m = mu_near;  // degenerate: use the near mode
  }
  state.contour_depths_m = std::move(contour_depths);

  state.safest_in_foreground =
      state.foreground.count_valid() >= state.background.count_valid();
  state.safest_point_px = coordinate_median(
      state.safest_in_foreground ? state.foreground : state.background);
  return state;
}

std::optional<GapState> track_gap(const GapState& previous,
                                  const DepthImage& depth,
                                  const GapConfig& config) {
  std::optional<GapState> fresh = detect_gap(depth, config);
  if (!fresh) return std::nullopt;

  // Associate by nearest mean depth: clusters keep their near/far roles, so
  // association only validates continuity via overlap.
  const double overlap_fg = overlap_fraction(previous.foreground, fresh->foreground);
  const double overlap_bg = overlap_fraction(previous.background, fresh->background);
  if (std::min(overlap_fg, overlap_bg) < config.min_track_overlap) {
    fresh->re_detected = true;
  }
  return fresh;
}

}  // namespace varibase::control
