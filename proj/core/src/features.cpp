#include "gsctrack/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gsctrack::features {

namespace {

inline double gray_at(const Frame& f, int y, int x) {
    if (f.channels == 1) return f.at(y, x, 0);
    double s = 0.0;
    for (int c = 0; c < f.channels; ++c) s += f.at(y, x, c);
    return s / f.channels;
}

}  // namespace

FeatureMap extract(const Frame& frame, const FeatureConfig& cfg) {
    if (cfg.cell_stride < 1) {
        throw std::invalid_argument("features::extract: cell_stride must be >= 1");
    }
    if (cfg.orientation_bins < 0 || cfg.orientation_bins > 32) {
        throw std::invalid_argument("features::extract: orientation_bins must be in [0, 32]");
    }
    if (frame.width % cfg.cell_stride != 0 || frame.height % cfg.cell_stride != 0) {
        throw std::invalid_argument("features::extract: frame dims must be divisible by cell_stride");
    }

    const int s = cfg.cell_stride;
    const int h = frame.height / s;
    const int w = frame.width / s;
    const int nbins = cfg.orientation_bins;
    const int C = cfg.channel_count();

    // Grayscale plane plus per-pixel central-difference gradients (clamped
    // at the frame border).
    std::vector<double> gray(static_cast<std::size_t>(frame.width) * frame.height);
    for (int y = 0; y < frame.height; ++y) {
        for (int x = 0; x < frame.width; ++x) {
            gray[static_cast<std::size_t>(y) * frame.width + x] = gray_at(frame, y, x);
        }
    }
    auto g = [&](int y, int x) { return gray[static_cast<std::size_t>(y) * frame.width + x]; };

    FeatureMap out = FeatureMap::zeros(h, w, C, s);
    out.normalized = cfg.normalize;

    const double inv_area = 1.0 / (s * s);
    const double pi = std::numbers::pi;

    for (int cy = 0; cy < h; ++cy) {
        for (int cx = 0; cx < w; ++cx) {
            double sum_i = 0.0, sum_gx = 0.0, sum_gy = 0.0, sum_mag = 0.0;
            double bins[32] = {0.0};
            for (int py = cy * s; py < (cy + 1) * s; ++py) {
                for (int px = cx * s; px < (cx + 1) * s; ++px) {
                    const int xl = std::max(px - 1, 0), xr = std::min(px + 1, frame.width - 1);
                    const int yu = std::max(py - 1, 0), yd = std::min(py + 1, frame.height - 1);
                    const double gx = (g(py, xr) - g(py, xl)) / 2.0;
                    const double gy = (g(yd, px) - g(yu, px)) / 2.0;
                    const double mag = std::sqrt(gx * gx + gy * gy);
                    sum_i += g(py, px);
                    sum_gx += gx;
                    sum_gy += gy;
                    sum_mag += mag;
                    if (nbins > 0 && mag > 0.0) {
                        // Unsigned orientation in [0, pi).
                        double theta = std::atan2(gy, gx);
                        if (theta < 0.0) theta += pi;
                        if (theta >= pi) theta -= pi;
                        int bin = static_cast<int>(theta / pi * nbins);
                        bin = std::clamp(bin, 0, nbins - 1);
                        bins[bin] += mag;
                    }
                }
            }
            double* cell = out.cell(cy, cx);
            cell[0] = sum_i * inv_area;
            cell[1] = sum_gx * inv_area;
            cell[2] = sum_gy * inv_area;
            cell[3] = sum_mag * inv_area;
            for (int b = 0; b < nbins; ++b) cell[4 + b] = bins[b] * inv_area;

            if (cfg.normalize) {
                double norm_sq = 0.0;
                for (int ch = 0; ch < C; ++ch) norm_sq += cell[ch] * cell[ch];
                if (norm_sq > 0.0) {
                    const double inv_norm = 1.0 / std::sqrt(norm_sq);
                    for (int ch = 0; ch < C; ++ch) cell[ch] *= inv_norm;
                }
            }
        }
    }
    return out;
}

}  // namespace gsctrack::features
