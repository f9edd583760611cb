#pragma once

#include <span>

#include "gsctrack/types.hpp"

namespace gsctrack {

/// Isotropic Gaussian response: values[y][x] = exp(-((y-cy)^2 + (x-cx)^2) / (2 sigma^2)).
/// The center is given as (cy, cx) in cell coordinates. Throws std::invalid_argument
/// for non-positive sigma.
ResponseMap gaussian_map(Point center, double sigma, int h, int w);

/// Bilinear interpolation of the four neighbors at fractional (y, x).
/// Coordinates outside the grid use zero padding: neighbors beyond the
/// border contribute 0. Throws std::invalid_argument for non-finite coords.
double bilinear_sample(const ResponseMap& grid, double y, double x);
double bilinear_sample(const ConfidenceMap& grid, double y, double x);

/// Per-channel bilinear sample of a feature map; out must have grid.c entries.
void bilinear_sample(const FeatureMap& grid, double y, double x, std::span<double> out);

/// Bilinear resize to (target_h, target_w), target dims >= source dims.
/// Sampling is center-aligned (half-pixel convention) with edge clamping, so
/// constant fields stay constant. For correspondence fields the stored
/// coordinates are additionally scaled by the (target/source) ratio per axis
/// so they stay valid in the upsampled grid.
ConfidenceMap upsample_field(const ConfidenceMap& field, int target_h, int target_w);
CorrespondenceField upsample_field(const CorrespondenceField& field, int target_h, int target_w);

}  // namespace gsctrack
