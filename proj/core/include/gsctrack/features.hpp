#pragma once

#include "gsctrack/types.hpp"

namespace gsctrack::features {

/// Hand-crafted channel features standing in for the deep backbone: per cell
/// the channels are [intensity mean, mean x-gradient, mean y-gradient, mean
/// gradient magnitude, N orientation-bin histograms] pooled over the cell's
/// stride x stride pixel block. With orientation_bins = 6 that gives C = 10.
struct FeatureConfig {
    int cell_stride = 4;
    int orientation_bins = 6;
    bool normalize = true;

    int channel_count() const { return 4 + orientation_bins; }
};

/// Extracts the feature grid of a frame. Frame dims must be divisible by
/// cell_stride (the crop pipeline guarantees this); otherwise throws
/// std::invalid_argument. Deterministic: identical input gives bit-identical
/// output. With cfg.normalize every nonzero cell vector is L2-normalized
/// (zero vectors stay zero).
FeatureMap extract(const Frame& frame, const FeatureConfig& cfg);

}  // namespace gsctrack::features
