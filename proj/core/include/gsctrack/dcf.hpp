#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "gsctrack/crop.hpp"
#include "gsctrack/features.hpp"
#include "gsctrack/types.hpp"

namespace gsctrack::dcf {

/// First-frame sample augmentation: the original plus four translations of
/// +-translation_px, a horizontal flip and two rotations of +-rotation_deg,
/// all applied on the feature grid with matching label shifts.
struct AugmentSpec {
    double translation_px = 8.0;
    double rotation_deg = 10.0;
    bool flip = true;
};

/// Gated update schedule: update every `period` frames or when a distractor
/// peak is present, and only while the response is confident.
struct UpdatePolicy {
    int period = 10;
    double score_gate = 0.25;
    double distractor_ratio = 0.8;
    // Radius (cells) around the main peak ignored when looking for
    // distractor peaks; <= 0 derives it from the estimated box size.
    double suppression_radius_cells = 0.0;
};

struct DcfConfig {
    double lambda = 1e-2;
    double learning_rate = 0.01;
    double label_sigma_factor = 0.125;  // label sigma = factor * target diagonal, in cells
    bool use_cosine_window = true;
    AugmentSpec augment;
    UpdatePolicy update;
    std::vector<double> scales = {0.98, 1.0, 1.02};
    double scale_penalty = 0.97;
    double scale_damping = 0.6;
};

/// Correlation filter in the frequency domain. The model keeps the averaged
/// regression targets (numerator per channel, shared denominator) so updates
/// can blend them; `filters` is the solved per-channel filter spectrum
/// num / (den + lambda). Values are immutable once built; updates return a
/// new model.
struct DcfModel {
    int h = 0;
    int w = 0;
    int c = 0;
    int stride = 1;
    double label_sigma = 1.0;
    double lambda = 1e-2;
    double learning_rate = 0.01;
    std::vector<double> window;                  // h*w cosine taper (or all ones)
    std::vector<std::complex<double>> num;       // c * spectrum_size
    std::vector<double> den;                     // spectrum_size
    std::vector<std::complex<double>> filters;   // c * spectrum_size

    bool empty() const { return h == 0; }
};

struct UpdateDecision {
    bool updated = false;
    std::string reason;  // "periodic" | "distractor" | "low_confidence" | "not_scheduled"
    double main_peak = 0.0;
    double distractor_peak = 0.0;
};

/// Fits the filter on the initial sample plus augmentations by per-channel
/// frequency-domain ridge regression against a Gaussian label centered on the
/// target (sigma = label_sigma_factor * target diagonal in cells). The target
/// box is in crop pixel coordinates and must lie inside the crop.
DcfModel init(const FeatureMap& x, const BBox& target, const DcfConfig& cfg);

/// Applies the filter: sum over channels of the cross-correlation of the
/// windowed features with the filter, evaluated in the frequency domain.
ResponseMap respond(const DcfModel& model, const FeatureMap& x);

/// Conservative update: blends the regression targets with exponential
/// averaging iff (frame_idx % period == 0 or a distractor is detected) and
/// the response peak clears the score gate. A below-gate response is a strict
/// no-op (the returned model is bit-identical to the input).
std::pair<DcfModel, UpdateDecision> maybe_update(const DcfModel& model, const FeatureMap& x,
                                                 const BBox& estimated,
                                                 const ResponseMap& response,
                                                 const UpdatePolicy& policy, int frame_idx);

/// Scale-pyramid box refinement: evaluates the filter on crops of the frame
/// at each scale (crop side = search_area_factor * sqrt(w*h) * scale), picks
/// the highest scale-penalized peak and applies a damped size change.
BBox estimate_scale(const DcfModel& model, const Frame& frame, const BBox& prev,
                    const DcfConfig& cfg, const features::FeatureConfig& feat_cfg,
                    double search_area_factor, int crop_size);

}  // namespace gsctrack::dcf
