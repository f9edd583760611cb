#pragma once

#include <utility>

#include "gsctrack/types.hpp"

namespace gsctrack::fusion {

/// Long/short-term combination parameters. Defaults follow the tracker's
/// shipped configuration: clip threshold 0.4, local-max kernel 8, fusion
/// weight 0.6, weight decay 0.6 per loss episode, lost threshold 0.25.
struct FusionParams {
    double t_s = 0.4;
    int k = 8;
    double w_fuse = 0.6;
    double decay = 0.6;
    double lost_threshold = 0.25;
    double ref_sigma = 2.0;  // cells
    // Eq-variant switch: false weights the reference Gaussian by the scalar
    // previous response at the chosen center; true multiplies the full
    // previous response map elementwise.
    bool reference_elementwise = false;
};

/// Short-term weighting state threaded through the tracker: the effective
/// fusion weight, the lost flag, and the number of completed loss episodes
/// (each reacquisition multiplies the base weight by `decay`).
struct FusionState {
    double current_weight = 0.0;
    bool lost = false;
    double last_response_peak = 0.0;
    int loss_episodes = 0;

    static FusionState fresh(const FusionParams& p) { return {p.w_fuse, false, 0.0, 0}; }
};

/// Reference map m: a Gaussian (sigma = ref_sigma) centered on the previous
/// target center (cell coordinates, via `stride`), weighted by the previous
/// long-term response. With reference_elementwise=false the weight is the
/// scalar `prev_peak` (the previous response sampled at the chosen center,
/// clamped at 0); otherwise the previous response map multiplies elementwise.
ResponseMap reference_map(double prev_peak, const BBox& prev_box,
                          const ResponseMap& prev_long_response, const FusionParams& params,
                          int stride);

/// Short-term response r^s = (t_s + relu(s - t_s)) * warp(m, c), the warp
/// being a bilinear sample of m at each correspondence target.
ResponseMap short_response(const ResponseMap& m, const CorrespondenceField& c,
                           const ConfidenceMap& s, const FusionParams& params);

/// 1 where the value ties the max over its k x k neighborhood (centered,
/// edge-truncated) within 1e-9; plateaus yield multiple 1s.
BinaryMask local_max_mask(const ResponseMap& r_l, int k);

/// r^ls = r^l + current_weight * local_max_mask(r^l, k) * r^s. Returns the
/// fused map and its argmax cell (ties to smallest (y, x)). A zero weight or
/// zero short-term contribution leaves the long-term map bit-identical.
std::pair<ResponseMap, Point> fuse(const ResponseMap& r_l, const ResponseMap& r_s,
                                   const FusionState& state, const FusionParams& params);

/// Lost-state transitions driven by the long-term peak: below lost_threshold
/// the weight drops to zero; on reacquisition the weight returns at
/// w_fuse * decay^episodes.
FusionState update_lost_state(const FusionState& state, double peak, const FusionParams& params);

}  // namespace gsctrack::fusion
