#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "gsctrack/crop.hpp"
#include "gsctrack/dcf.hpp"
#include "gsctrack/features.hpp"
#include "gsctrack/fusion.hpp"
#include "gsctrack/types.hpp"

namespace gsctrack::tracker {

struct GscParams {
    double temperature = 0.05;
    // Chebyshev search radius of the correspondence softmax, in cells;
    // bounds the per-frame motion the short-term model considers. 0 searches
    // the whole grid.
    int search_radius_cells = 6;
    double sigma_conf = 2.0;
};

/// Table-1-style ablation switches. confidence_override, when finite,
/// replaces the estimated confidence map with a constant (1.0 reproduces the
/// no-confidence ablation; 0.0 disables the short-term path entirely).
struct AblationFlags {
    bool disable_short_term = false;
    bool disable_confidence = false;
    bool disable_gsc = false;
    double confidence_override = std::numeric_limits<double>::quiet_NaN();
};

struct TrackerConfig {
    double search_area_factor = 5.0;
    int crop_size = 288;  // must be divisible by feature.cell_stride
    // Tracking default runs the shared features at stride 16, the grid
    // geometry the response-map pipeline is tuned for.
    features::FeatureConfig feature{.cell_stride = 16};
    GscParams gsc;
    dcf::DcfConfig dcf;
    fusion::FusionParams fusion;
    AblationFlags ablation;
};

struct TrackerState {
    TrackerConfig cfg;
    BBox current_box;  // frame pixels
    FeatureMap prev_crop_features;
    ResponseMap prev_long_response;
    CropTransform prev_transform;
    dcf::DcfModel dcf_model;
    fusion::FusionState fusion_state;
    int frame_idx = 0;
    bool initialized = false;
};

/// Per-frame internals surfaced for the bench harness and the acceptance
/// checks. lost and fusion_weight reflect the post-step fusion state.
struct StepDiagnostics {
    int frame_idx = 0;
    double long_peak = 0.0;
    double short_peak = std::numeric_limits<double>::quiet_NaN();
    bool short_term_active = false;
    double fusion_weight_used = 0.0;
    double fusion_weight = 0.0;
    bool lost = false;
    dcf::UpdateDecision update;
    BBox box;
};

struct StepResult {
    TrackerState state;
    BBox box;
    StepDiagnostics diag;
};

/// Square search crop of side search_area_factor * sqrt(w*h) centered on the
/// box, resampled to crop_size x crop_size; regions beyond the frame are
/// zero-padded. The transform maps crop coordinates back to frame pixels.
std::pair<Frame, CropTransform> crop_search_region(const Frame& frame, const BBox& box,
                                                   const TrackerConfig& cfg);

/// First-frame initialization: fits the correlation filter on the augmented
/// initial sample and caches the features/response the next step's
/// short-term model needs. The box must lie fully inside the frame.
TrackerState init(const Frame& first_frame, const BBox& init_box, const TrackerConfig& cfg);

/// One tracking step: crop, features, long-term response, short-term
/// response (when enabled and not lost), fusion, box update, scale
/// refinement, lost-state update and the gated filter update.
StepResult step(const TrackerState& state, const Frame& frame);

}  // namespace gsctrack::tracker
