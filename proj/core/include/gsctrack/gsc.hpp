#pragma once

#include "gsctrack/types.hpp"

namespace gsctrack::gsc {

/// All-pairs feature similarities between two frames. For cell (y_b, x_b) of
/// the current frame, scores[row(y_b, x_b)][i] is the inner product with cell
/// i = y_a * w + x_a of the previous frame, so each row has h*w entries.
struct CorrelationVolume {
    int h = 0;
    int w = 0;
    int hw = 0;
    std::vector<double> scores;  // (h*w) rows of length hw

    const double* row(int y, int x) const {
        return scores.data() + (static_cast<std::size_t>(y) * w + x) * hw;
    }
    double* row(int y, int x) { return scores.data() + (static_cast<std::size_t>(y) * w + x) * hw; }
};

/// Short-term model output: dense correspondence plus its confidence.
struct GscOutput {
    CorrespondenceField correspondence;
    ConfidenceMap confidence;
};

/// Training/evaluation labels derived from two annotated boxes.
struct LabelPair {
    CorrespondenceField gt_correspondence;
    BinaryMask target_mask;
    CorrespondenceField pseudo_correspondence;
    ConfidenceMap gt_confidence;
};

/// Exact all-pairs inner products of per-cell feature vectors; both maps must
/// share the same shape (else std::invalid_argument) and are expected to be
/// normalized.
CorrelationVolume correlation_volume(const FeatureMap& x_a, const FeatureMap& x_b);

/// Soft-argmax correspondence: per cell, softmax of the correlation row at
/// the given temperature, then the expectation of source coordinates under
/// that softmax. Temperature must be positive.
CorrespondenceField extract_correspondence(const CorrelationVolume& vol, double temperature);

/// Same, but the softmax for cell (y, x) only runs over source cells within
/// Chebyshev distance `radius` of (y, x). This encodes the bounded per-frame
/// motion of adjacent frames; radius <= 0 means unrestricted.
CorrespondenceField extract_correspondence(const CorrelationVolume& vol, double temperature,
                                           int radius);

/// Warps x_a by the correspondence: output cell (y, x) is the bilinear sample
/// of x_a at c[y][x], zero-padded outside the grid.
FeatureMap warp_features(const FeatureMap& x_a, const CorrespondenceField& c);

/// Confidence of each correspondence: per-cell channel dot product of
/// warp_features(x_a, c) with x_b, clamped below at 0.
ConfidenceMap estimate_confidence(const FeatureMap& x_a, const FeatureMap& x_b,
                                  const CorrespondenceField& c);

/// Ground-truth label construction from two target boxes (pixel coordinates):
/// a translation + per-axis-scale transform maps current-frame cells into
/// previous-frame cells; the mask covers p_b shrunk by a factor of 2; the
/// pseudo correspondence sends every cell to p_a's center; the confidence
/// label is a Gaussian around p_b's center.
LabelPair make_gt_labels(const BBox& p_a, const BBox& p_b, int h, int w, int stride,
                         double sigma_conf);

/// Mean absolute difference over mask=1 cells. For correspondence fields both
/// coordinate components contribute (the mean divides by 2 * count). The mask
/// must select at least one cell.
double masked_l1(const CorrespondenceField& pred, const CorrespondenceField& gt,
                 const BinaryMask& mask);
double masked_l1(const ConfidenceMap& pred, const ConfidenceMap& gt, const BinaryMask& mask);

}  // namespace gsctrack::gsc
