#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Shared domain types for the tracker. All grids are row-major with (y, x)
// indexing; this convention is fixed here and used everywhere else.

namespace gsctrack {

/// A (y, x) point in grid-cell or pixel coordinates.
struct Point {
    double y = 0.0;
    double x = 0.0;
};

/// Axis-aligned box in center form: (cx, cy) is the center in pixels,
/// w and h are the side lengths (both > 0 for a valid box).
struct BBox {
    double cx = 0.0;
    double cy = 0.0;
    double w = 0.0;
    double h = 0.0;

    static BBox from_center(double cx, double cy, double w, double h) { return {cx, cy, w, h}; }

    /// Builds from corner form (x, y, w, h) with (x, y) the top-left corner.
    static BBox from_corner(double x, double y, double w, double h) {
        return {x + w / 2.0, y + h / 2.0, w, h};
    }

    double x0() const { return cx - w / 2.0; }
    double y0() const { return cy - h / 2.0; }
    double x1() const { return cx + w / 2.0; }
    double y1() const { return cy + h / 2.0; }

    double area() const { return w * h; }
    double diagonal() const { return std::sqrt(w * w + h * h); }

    bool valid() const {
        return std::isfinite(cx) && std::isfinite(cy) && std::isfinite(w) && std::isfinite(h) &&
               w > 0.0 && h > 0.0;
    }
};

inline void require_valid(const BBox& b, const char* what) {
    if (!b.valid()) {
        throw std::invalid_argument(std::string(what) + ": box must have finite coordinates and w, h > 0");
    }
}

/// Image crop with pixel values in [0, 1], either grayscale (channels = 1)
/// or RGB (channels = 3). Layout: (y * width + x) * channels + c.
struct Frame {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<double> pixels;

    static Frame zeros(int width, int height, int channels = 1) {
        Frame f;
        f.width = width;
        f.height = height;
        f.channels = channels;
        f.pixels.assign(static_cast<std::size_t>(width) * height * channels, 0.0);
        return f;
    }

    double at(int y, int x, int c = 0) const {
        return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    double& at(int y, int x, int c = 0) {
        return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
};

/// Dense feature grid extracted from a crop: h x w cells, c channels per
/// cell, each cell covering stride x stride pixels.
/// Layout: (y * w + x) * c + ch, so a cell's channel vector is contiguous.
struct FeatureMap {
    int h = 0;
    int w = 0;
    int c = 0;
    int stride = 1;
    bool normalized = false;
    std::vector<double> data;

    static FeatureMap zeros(int h, int w, int c, int stride = 1) {
        FeatureMap m;
        m.h = h;
        m.w = w;
        m.c = c;
        m.stride = stride;
        m.data.assign(static_cast<std::size_t>(h) * w * c, 0.0);
        return m;
    }

    const double* cell(int y, int x) const {
        return data.data() + (static_cast<std::size_t>(y) * w + x) * c;
    }
    double* cell(int y, int x) { return data.data() + (static_cast<std::size_t>(y) * w + x) * c; }

    double at(int y, int x, int ch) const { return cell(y, x)[ch]; }
    double& at(int y, int x, int ch) { return cell(y, x)[ch]; }

    bool same_shape(const FeatureMap& o) const { return h == o.h && w == o.w && c == o.c; }
};

/// H x W scalar score grid (used for r^l, r^s, r^ls, m and k).
struct ResponseMap {
    int h = 0;
    int w = 0;
    std::vector<double> v;

    static ResponseMap zeros(int h, int w) {
        ResponseMap m;
        m.h = h;
        m.w = w;
        m.v.assign(static_cast<std::size_t>(h) * w, 0.0);
        return m;
    }

    double at(int y, int x) const { return v[static_cast<std::size_t>(y) * w + x]; }
    double& at(int y, int x) { return v[static_cast<std::size_t>(y) * w + x]; }
};

/// H x W per-cell correspondence reliability, >= 0 after the ReLU.
struct ConfidenceMap {
    int h = 0;
    int w = 0;
    std::vector<double> v;

    static ConfidenceMap zeros(int h, int w) {
        ConfidenceMap m;
        m.h = h;
        m.w = w;
        m.v.assign(static_cast<std::size_t>(h) * w, 0.0);
        return m;
    }

    double at(int y, int x) const { return v[static_cast<std::size_t>(y) * w + x]; }
    double& at(int y, int x) { return v[static_cast<std::size_t>(y) * w + x]; }
};

/// H x W grid of fractional source coordinates: entry (y, x) names the
/// position in the *previous* frame's grid that cell (y, x) corresponds to.
/// Coordinates may lie outside the grid; sampling handles that with zero
/// padding.
struct CorrespondenceField {
    int h = 0;
    int w = 0;
    std::vector<double> ys;
    std::vector<double> xs;

    static CorrespondenceField zeros(int h, int w) {
        CorrespondenceField f;
        f.h = h;
        f.w = w;
        f.ys.assign(static_cast<std::size_t>(h) * w, 0.0);
        f.xs.assign(static_cast<std::size_t>(h) * w, 0.0);
        return f;
    }

    static CorrespondenceField identity(int h, int w) {
        CorrespondenceField f = zeros(h, w);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                f.y_at(y, x) = y;
                f.x_at(y, x) = x;
            }
        }
        return f;
    }

    double y_at(int y, int x) const { return ys[static_cast<std::size_t>(y) * w + x]; }
    double& y_at(int y, int x) { return ys[static_cast<std::size_t>(y) * w + x]; }
    double x_at(int y, int x) const { return xs[static_cast<std::size_t>(y) * w + x]; }
    double& x_at(int y, int x) { return xs[static_cast<std::size_t>(y) * w + x]; }
};

/// 0/1 mask grid (target areas, local-maximum masks in binary form).
struct BinaryMask {
    int h = 0;
    int w = 0;
    std::vector<std::uint8_t> v;

    static BinaryMask zeros(int h, int w) {
        BinaryMask m;
        m.h = h;
        m.w = w;
        m.v.assign(static_cast<std::size_t>(h) * w, 0);
        return m;
    }

    std::uint8_t at(int y, int x) const { return v[static_cast<std::size_t>(y) * w + x]; }
    std::uint8_t& at(int y, int x) { return v[static_cast<std::size_t>(y) * w + x]; }

    int count() const {
        int n = 0;
        for (auto b : v) n += b ? 1 : 0;
        return n;
    }
};

/// Pixel <-> feature-cell coordinate conversion. Cell y covers pixels
/// [y*stride, (y+1)*stride); its center sits at pixel (y + 0.5) * stride.
inline double px_to_cell(double px, int stride) { return px / stride - 0.5; }
inline double cell_to_px(double cell, int stride) { return (cell + 0.5) * stride; }

/// Argmax over a response map; ties broken by smallest (y, x) lexicographic.
inline Point argmax_cell(const ResponseMap& r) {
    int by = 0, bx = 0;
    double best = r.at(0, 0);
    for (int y = 0; y < r.h; ++y) {
        for (int x = 0; x < r.w; ++x) {
            if (r.at(y, x) > best) {
                best = r.at(y, x);
                by = y;
                bx = x;
            }
        }
    }
    return {static_cast<double>(by), static_cast<double>(bx)};
}

inline double max_value(const ResponseMap& r) {
    const Point p = argmax_cell(r);
    return r.at(static_cast<int>(p.y), static_cast<int>(p.x));
}

}  // namespace gsctrack
