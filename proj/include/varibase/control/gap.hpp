#pragma once

#include <optional>
#include <vector>

#include "varibase/core/image.hpp"

namespace varibase::control {

struct GapConfig {
  double min_valid_fraction = 0.2;
  /// Bimodality: inter-cluster mean separation must exceed this multiple of
  /// the within-cluster spread (max of the two cluster standard deviations,
  /// floored at spread_floor_rel * mid-depth).
  double separation_factor = 3.0;
  double spread_floor_rel = 0.01;
  /// Contour: valid pixels whose depth-gradient magnitude exceeds this
  /// fraction of the inter-cluster mean separation.
  double contour_gradient_factor = 0.5;
  /// track_gap falls back to full re-detection below this mask overlap.
  double min_track_overlap = 0.3;
  int kmeans_max_iterations = 50;
};

/// Foreground/background depth clustering of a gap scene. Masks mark
/// membership (pixel set <=> mask valid); the safest point is the
/// coordinate-wise median of the larger cluster.
struct GapState {
  Image<uint8_t> foreground;  // near cluster
  Image<uint8_t> background;  // far cluster
  Image<uint8_t> contour;
  Vec2 safest_point_px = Vec2::Zero();
  bool safest_in_foreground = true;
  double foreground_mean_m = 0.0;
  double background_mean_m = 0.0;
  std::vector<double> contour_depths_m;  // Z at each contour pixel
  double median_contour_depth_m = 0.0;
  bool re_detected = false;
};

/// Two-mode depth clustering (1D 2-means, deterministic quantile init).
/// Returns nullopt when fewer than min_valid_fraction of pixels are valid
/// or the depth distribution is unimodal (separation below the configured
/// multiple of spread) — the caller re-detects on later frames.
std::optional<GapState> detect_gap(const DepthImage& depth,
                                   const GapConfig& config = {});

/// Frame-to-frame continuation: clusters of the new frame are associated to
/// the previous ones by nearest mean depth and mask overlap; on overlap
/// below min_track_overlap the result degrades to a fresh detection with
/// re_detected set. Propagates detect_gap's no-gap result.
std::optional<GapState> track_gap(const GapState& previous,
                                  const DepthImage& depth,
                                  const GapConfig& config = {});

}  // namespace varibase::control
