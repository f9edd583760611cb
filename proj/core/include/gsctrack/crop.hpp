#pragma once

#include "gsctrack/types.hpp"

namespace gsctrack {

/// Invertible affine map between a square resampled crop and frame pixels.
/// Crop pixel (u, v) samples the frame at to_frame({u, v}); the crop center
/// pixel (crop_size-1)/2 lands exactly on (cy, cx).
struct CropTransform {
    double cy = 0.0;     // frame coordinates of the crop center
    double cx = 0.0;
    double scale = 1.0;  // frame pixels per crop pixel
    int crop_size = 0;

    Point to_frame(Point crop_pt) const {
        const double half = (crop_size - 1) / 2.0;
        return {cy + (crop_pt.y - half) * scale, cx + (crop_pt.x - half) * scale};
    }

    Point to_crop(Point frame_pt) const {
        const double half = (crop_size - 1) / 2.0;
        return {(frame_pt.y - cy) / scale + half, (frame_pt.x - cx) / scale + half};
    }

    BBox box_to_frame(const BBox& b) const {
        const Point c = to_frame({b.cy, b.cx});
        return {c.x, c.y, b.w * scale, b.h * scale};
    }

    BBox box_to_crop(const BBox& b) const {
        const Point c = to_crop({b.cy, b.cx});
        return {c.x, c.y, b.w / scale, b.h / scale};
    }
};

/// Builds the transform for a square region of side `side_px` centered on
/// `center` (frame pixels), resampled to crop_size x crop_size.
CropTransform make_crop_transform(Point center, double side_px, int crop_size);

/// Resamples the frame through the transform with bilinear interpolation;
/// samples beyond the frame bounds are zero.
Frame crop_resample(const Frame& frame, const CropTransform& t);

}  // namespace gsctrack
