#include "gsctrack/gsc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsctrack/grid_ops.hpp"

namespace gsctrack::gsc {

CorrelationVolume correlation_volume(const FeatureMap& x_a, const FeatureMap& x_b) {
    if (!x_a.same_shape(x_b)) {
        throw std::invalid_argument("correlation_volume: feature maps must share shape");
    }
    CorrelationVolume vol;
    vol.h = x_b.h;
    vol.w = x_b.w;
    vol.hw = x_b.h * x_b.w;
    vol.scores.resize(static_cast<std::size_t>(vol.hw) * vol.hw);

    const int c = x_a.c;
    for (int yb = 0; yb < vol.h; ++yb) {
        for (int xb = 0; xb < vol.w; ++xb) {
            const double* b_cell = x_b.cell(yb, xb);
            double* out = vol.row(yb, xb);
            const double* a_data = x_a.data.data();
            for (int i = 0; i < vol.hw; ++i) {
                const double* a_cell = a_data + static_cast<std::size_t>(i) * c;
                double dot = 0.0;
                for (int ch = 0; ch < c; ++ch) dot += b_cell[ch] * a_cell[ch];
                out[i] = dot;
            }
        }
    }
    return vol;
}

CorrespondenceField extract_correspondence(const CorrelationVolume& vol, double temperature) {
    return extract_correspondence(vol, temperature, 0);
}

CorrespondenceField extract_correspondence(const CorrelationVolume& vol, double temperature,
                                           int radius) {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw std::invalid_argument("extract_correspondence: temperature must be positive");
    }
    CorrespondenceField out = CorrespondenceField::zeros(vol.h, vol.w);
    const double inv_t = 1.0 / temperature;

    for (int yb = 0; yb < vol.h; ++yb) {
        for (int xb = 0; xb < vol.w; ++xb) {
            const double* row = vol.row(yb, xb);
            int y_lo = 0, y_hi = vol.h - 1, x_lo = 0, x_hi = vol.w - 1;
            if (radius > 0) {
                y_lo = std::max(0, yb - radius);
                y_hi = std::min(vol.h - 1, yb + radius);
                x_lo = std::max(0, xb - radius);
                x_hi = std::min(vol.w - 1, xb + radius);
            }
            double max_score = -std::numeric_limits<double>::infinity();
            for (int ya = y_lo; ya <= y_hi; ++ya) {
                for (int xa = x_lo; xa <= x_hi; ++xa) {
                    max_score = std::max(max_score, row[ya * vol.w + xa]);
                }
            }
            double z = 0.0, ey = 0.0, ex = 0.0;
            for (int ya = y_lo; ya <= y_hi; ++ya) {
                for (int xa = x_lo; xa <= x_hi; ++xa) {
                    const double e = std::exp((row[ya * vol.w + xa] - max_score) * inv_t);
                    z += e;
                    ey += e * ya;
                    ex += e * xa;
                }
            }
            out.y_at(yb, xb) = ey / z;
            out.x_at(yb, xb) = ex / z;
        }
    }
    return out;
}

FeatureMap warp_features(const FeatureMap& x_a, const CorrespondenceField& c) {
    if (c.h != x_a.h || c.w != x_a.w) {
        throw std::invalid_argument("warp_features: correspondence dims must match features");
    }
    FeatureMap out = FeatureMap::zeros(x_a.h, x_a.w, x_a.c, x_a.stride);
    out.normalized = false;  // interpolation does not preserve unit norm
    for (int y = 0; y < c.h; ++y) {
        for (int x = 0; x < c.w; ++x) {
            bilinear_sample(x_a, c.y_at(y, x), c.x_at(y, x),
                            std::span<double>(out.cell(y, x), static_cast<std::size_t>(out.c)));
        }
    }
    return out;
}

ConfidenceMap estimate_confidence(const FeatureMap& x_a, const FeatureMap& x_b,
                                  const CorrespondenceField& c) {
    if (!x_a.same_shape(x_b)) {
        throw std::invalid_argument("estimate_confidence: feature maps must share shape");
    }
    if (c.h != x_b.h || c.w != x_b.w) {
        throw std::invalid_argument("estimate_confidence: correspondence dims must match features");
    }
    const FeatureMap warped = warp_features(x_a, c);
    ConfidenceMap s = ConfidenceMap::zeros(x_b.h, x_b.w);
    for (int y = 0; y < x_b.h; ++y) {
        for (int x = 0; x < x_b.w; ++x) {
            const double* wa = warped.cell(y, x);
            const double* bb = x_b.cell(y, x);
            double dot = 0.0;
            for (int ch = 0; ch < x_b.c; ++ch) dot += wa[ch] * bb[ch];
            s.at(y, x) = std::max(dot, 0.0);
        }
    }
    return s;
}

LabelPair make_gt_labels(const BBox& p_a, const BBox& p_b, int h, int w, int stride,
                         double sigma_conf) {
    require_valid(p_a, "make_gt_labels");
    require_valid(p_b, "make_gt_labels");
    if (h < 1 || w < 1 || stride < 1) {
        throw std::invalid_argument("make_gt_labels: grid and stride must be positive");
    }
    if (!(sigma_conf > 0.0)) {
        throw std::invalid_argument("make_gt_labels: sigma_conf must be positive");
    }

    LabelPair out;
    out.gt_correspondence = CorrespondenceField::zeros(h, w);
    out.pseudo_correspondence = CorrespondenceField::zeros(h, w);
    out.target_mask = BinaryMask::zeros(h, w);

    // Translation + per-axis scale determined by the two boxes (two
    // axis-aligned boxes cannot pin down a rotation).
    const double sx = p_a.w / p_b.w;
    const double sy = p_a.h / p_b.h;
    const Point a_center_cell{px_to_cell(p_a.cy, stride), px_to_cell(p_a.cx, stride)};

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double py = cell_to_px(y, stride);
            const double px = cell_to_px(x, stride);
            const double ay = p_a.cy + (py - p_b.cy) * sy;
            const double ax = p_a.cx + (px - p_b.cx) * sx;
            out.gt_correspondence.y_at(y, x) = px_to_cell(ay, stride);
            out.gt_correspondence.x_at(y, x) = px_to_cell(ax, stride);
            out.pseudo_correspondence.y_at(y, x) = a_center_cell.y;
            out.pseudo_correspondence.x_at(y, x) = a_center_cell.x;
            const bool inside = std::abs(px - p_b.cx) <= p_b.w / 4.0 &&
                                std::abs(py - p_b.cy) <= p_b.h / 4.0;
            out.target_mask.at(y, x) = inside ? 1 : 0;
        }
    }

    const ResponseMap conf = gaussian_map(
        {px_to_cell(p_b.cy, stride), px_to_cell(p_b.cx, stride)}, sigma_conf, h, w);
    out.gt_confidence = ConfidenceMap::zeros(h, w);
    out.gt_confidence.v = conf.v;
    return out;
}

namespace {

inline void check_mask(int h, int w, const BinaryMask& mask, const char* what) {
    if (mask.h != h || mask.w != w) {
        throw std::invalid_argument(std::string(what) + ": mask dims must match");
    }
    if (mask.count() == 0) {
        throw std::invalid_argument(std::string(what) + ": mask must select at least one cell");
    }
}

}  // namespace

double masked_l1(const CorrespondenceField& pred, const CorrespondenceField& gt,
                 const BinaryMask& mask) {
    if (pred.h != gt.h || pred.w != gt.w) {
        throw std::invalid_argument("masked_l1: field dims must match");
    }
    check_mask(pred.h, pred.w, mask, "masked_l1");
    double sum = 0.0;
    int count = 0;
    for (int y = 0; y < pred.h; ++y) {
        for (int x = 0; x < pred.w; ++x) {
            if (!mask.at(y, x)) continue;
            sum += std::abs(pred.y_at(y, x) - gt.y_at(y, x));
            sum += std::abs(pred.x_at(y, x) - gt.x_at(y, x));
            ++count;
        }
    }
    return sum / (2.0 * count);
}

double masked_l1(const ConfidenceMap& pred, const ConfidenceMap& gt, const BinaryMask& mask) {
    if (pred.h != gt.h || pred.w != gt.w) {
        throw std::invalid_argument("masked_l1: map dims must match");
    }
    check_mask(pred.h, pred.w, mask, "masked_l1");
    double sum = 0.0;
    int count = 0;
    for (int y = 0; y < pred.h; ++y) {
        for (int x = 0; x < pred.w; ++x) {
            if (!mask.at(y, x)) continue;
            sum += std::abs(pred.at(y, x) - gt.at(y, x));
            ++count;
        }
    }
    return sum / count;
}

}  // namespace gsctrack::gsc
