#include "gsctrack/grid_ops.hpp"

#include <algorithm>
#include <cmath>

namespace gsctrack {

ResponseMap gaussian_map(Point center, double sigma, int h, int w) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("gaussian_map: sigma must be positive");
    }
    if (h < 1 || w < 1) {
        throw std::invalid_argument("gaussian_map: grid dims must be >= 1");
    }
    ResponseMap out = ResponseMap::zeros(h, w);
    const double inv = 1.0 / (2.0 * sigma * sigma);
    for (int y = 0; y < h; ++y) {
        const double dy = y - center.y;
        for (int x = 0; x < w; ++x) {
            const double dx = x - center.x;
            out.at(y, x) = std::exp(-(dy * dy + dx * dx) * inv);
        }
    }
    return out;
}

namespace {

struct BilinearWeights {
    int y0, x0;
    double wy1, wx1;  // weight of the +1 neighbor along each axis
};

inline BilinearWeights split_coord(double y, double x) {
    if (!std::isfinite(y) || !std::isfinite(x)) {
        throw std::invalid_argument("bilinear_sample: coordinates must be finite");
    }
    const double fy = std::floor(y);
    const double fx = std::floor(x);
    return {static_cast<int>(fy), static_cast<int>(fx), y - fy, x - fx};
}

template <typename Grid>
double sample_scalar(const Grid& g, double y, double x) {
    const BilinearWeights b = split_coord(y, x);
    auto value = [&](int yy, int xx) -> double {
        if (yy < 0 || yy >= g.h || xx < 0 || xx >= g.w) return 0.0;
        return g.at(yy, xx);
    };
    const double w00 = (1.0 - b.wy1) * (1.0 - b.wx1);
    const double w01 = (1.0 - b.wy1) * b.wx1;
    const double w10 = b.wy1 * (1.0 - b.wx1);
    const double w11 = b.wy1 * b.wx1;
    return w00 * value(b.y0, b.x0) + w01 * value(b.y0, b.x0 + 1) +
           w10 * value(b.y0 + 1, b.x0) + w11 * value(b.y0 + 1, b.x0 + 1);
}

}  // namespace

double bilinear_sample(const ResponseMap& grid, double y, double x) {
    return sample_scalar(grid, y, x);
}

double bilinear_sample(const ConfidenceMap& grid, double y, double x) {
    return sample_scalar(grid, y, x);
}

void bilinear_sample(const FeatureMap& grid, double y, double x, std::span<double> out) {
    const BilinearWeights b = split_coord(y, x);
    std::fill(out.begin(), out.end(), 0.0);
    auto accumulate = [&](int yy, int xx, double weight) {
        if (weight == 0.0 || yy < 0 || yy >= grid.h || xx < 0 || xx >= grid.w) return;
        const double* cell = grid.cell(yy, xx);
        for (int ch = 0; ch < grid.c; ++ch) out[ch] += weight * cell[ch];
    };
    accumulate(b.y0, b.x0, (1.0 - b.wy1) * (1.0 - b.wx1));
    accumulate(b.y0, b.x0 + 1, (1.0 - b.wy1) * b.wx1);
    accumulate(b.y0 + 1, b.x0, b.wy1 * (1.0 - b.wx1));
    accumulate(b.y0 + 1, b.x0 + 1, b.wy1 * b.wx1);
}

namespace {

// Center-aligned resize coordinate with edge clamping.
inline double resize_coord(int dst, int dst_size, int src_size) {
    if (dst_size == src_size) return dst;
    const double ratio = static_cast<double>(src_size) / dst_size;
    double s = (dst + 0.5) * ratio - 0.5;
    return std::clamp(s, 0.0, static_cast<double>(src_size - 1));
}

inline void check_upsample(int sh, int sw, int th, int tw) {
    if (th < sh || tw < sw) {
        throw std::invalid_argument("upsample_field: target dims must be >= source dims");
    }
    if (sh < 1 || sw < 1) {
        throw std::invalid_argument("upsample_field: source must be non-empty");
    }
}

template <typename Grid>
double sample_clamped(const Grid& g, double y, double x) {
    const double fy = std::floor(y);
    const double fx = std::floor(x);
    const int y0 = static_cast<int>(fy), x0 = static_cast<int>(fx);
    const int y1 = std::min(y0 + 1, g.h - 1), x1 = std::min(x0 + 1, g.w - 1);
    const double wy = y - fy, wx = x - fx;
    return (1 - wy) * ((1 - wx) * g.at(y0, x0) + wx * g.at(y0, x1)) +
           wy * ((1 - wx) * g.at(y1, x0) + wx * g.at(y1, x1));
}

}  // namespace

ConfidenceMap upsample_field(const ConfidenceMap& field, int target_h, int target_w) {
    check_upsample(field.h, field.w, target_h, target_w);
    if (target_h == field.h && target_w == field.w) return field;
    ConfidenceMap out = ConfidenceMap::zeros(target_h, target_w);
    for (int y = 0; y < target_h; ++y) {
        const double sy = resize_coord(y, target_h, field.h);
        for (int x = 0; x < target_w; ++x) {
            const double sx = resize_coord(x, target_w, field.w);
            out.at(y, x) = sample_clamped(field, sy, sx);
        }
    }
    return out;
}

namespace {

struct YView {
    const CorrespondenceField& f;
    int h, w;
    double at(int y, int x) const { return f.y_at(y, x); }
};
struct XView {
    const CorrespondenceField& f;
    int h, w;
    double at(int y, int x) const { return f.x_at(y, x); }
};

}  // namespace

CorrespondenceField upsample_field(const CorrespondenceField& field, int target_h, int target_w) {
    check_upsample(field.h, field.w, target_h, target_w);
    if (target_h == field.h && target_w == field.w) return field;
    CorrespondenceField out = CorrespondenceField::zeros(target_h, target_w);
    const double ry = static_cast<double>(target_h) / field.h;
    const double rx = static_cast<double>(target_w) / field.w;
    const YView yv{field, field.h, field.w};
    const XView xv{field, field.h, field.w};
    for (int y = 0; y < target_h; ++y) {
        const double sy = resize_coord(y, target_h, field.h);
        for (int x = 0; x < target_w; ++x) {
            const double sx = resize_coord(x, target_w, field.w);
            // Stored coordinates are rescaled so they address the upsampled grid.
            out.y_at(y, x) = ry * sample_clamped(yv, sy, sx);
            out.x_at(y, x) = rx * sample_clamped(xv, sy, sx);
        }
    }
    return out;
}

}  // namespace gsctrack
