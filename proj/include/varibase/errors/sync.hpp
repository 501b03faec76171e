#pragma once

namespace varibase::errors {

/// Highest speed keeping the motion-induced false disparity under k pixels
/// for a scene at depth Z with capture-time offset delta_t:
///
///   v_max = k * Z^2 / (delta_t * (b*f - k*Z))
///
/// (boundary of v*dt >= k Z^2/(bf - kZ), worst case motion along the optical
/// axis). Throws UnboundedRegimeError when b*f <= k*Z — no velocity keeps
/// the error under k at that depth/baseline — and std::invalid_argument for
/// non-positive arguments.
double max_velocity_for_sync(double k_px, double depth_m, double baseline_m,
                             double focal_px, double delta_t_s);

}  // namespace varibase::errors
