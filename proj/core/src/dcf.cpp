#include "gsctrack/dcf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gsctrack/fft.hpp"
#include "gsctrack/grid_ops.hpp"
#include "gsctrack/gsc.hpp"

namespace gsctrack::dcf {

namespace {

std::vector<double> make_window(int h, int w, bool cosine) {
    std::vector<double> win(static_cast<std::size_t>(h) * w, 1.0);
    if (!cosine) return win;
    auto hann = [](int i, int n) {
        if (n <= 1) return 1.0;
        return 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (n - 1));
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            win[static_cast<std::size_t>(y) * w + x] = hann(y, h) * hann(x, w);
        }
    }
    return win;
}

/// FFT of each windowed feature channel.
std::vector<std::complex<double>> windowed_spectra(const FeatureMap& x,
                                                   const std::vector<double>& window) {
    const int spec = fft::spectrum_size(x.h, x.w);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(x.c) * spec);
    std::vector<double> plane(static_cast<std::size_t>(x.h) * x.w);
    for (int ch = 0; ch < x.c; ++ch) {
        for (int y = 0; y < x.h; ++y) {
            for (int xx = 0; xx < x.w; ++xx) {
                plane[static_cast<std::size_t>(y) * x.w + xx] =
                    x.at(y, xx, ch) * window[static_cast<std::size_t>(y) * x.w + xx];
            }
        }
        fft::rfft2(plane.data(), x.h, x.w, out.data() + static_cast<std::size_t>(ch) * spec);
    }
    return out;
}

struct SampleTargets {
    std::vector<std::complex<double>> num;  // c * spec
    std::vector<double> den;                // spec
};

/// Per-bin ridge-regression targets of one sample: numerator conj(Z_c) .* Y
/// per channel, denominator sum_c |Z_c|^2.
SampleTargets sample_targets(const std::vector<std::complex<double>>& spectra, int c, int h, int w,
                             const ResponseMap& label) {
    const int spec = fft::spectrum_size(h, w);
    SampleTargets t;
    t.num.assign(static_cast<std::size_t>(c) * spec, {0.0, 0.0});
    t.den.assign(spec, 0.0);
    std::vector<std::complex<double>> label_hat(spec);
    fft::rfft2(label.v.data(), h, w, label_hat.data());
    for (int ch = 0; ch < c; ++ch) {
        const std::complex<double>* z = spectra.data() + static_cast<std::size_t>(ch) * spec;
        std::complex<double>* n = t.num.data() + static_cast<std::size_t>(ch) * spec;
        for (int f = 0; f < spec; ++f) {
            n[f] = std::conj(z[f]) * label_hat[f];
            t.den[f] += std::norm(z[f]);
        }
    }
    return t;
}

void solve_filters(DcfModel& m) {
    const int spec = fft::spectrum_size(m.h, m.w);
    m.filters.resize(m.num.size());
    for (int ch = 0; ch < m.c; ++ch) {
        const std::complex<double>* n = m.num.data() + static_cast<std::size_t>(ch) * spec;
        std::complex<double>* flt = m.filters.data() + static_cast<std::size_t>(ch) * spec;
        for (int f = 0; f < spec; ++f) {
            flt[f] = n[f] / (m.den[f] + m.lambda);
        }
    }
}

struct Sample {
    FeatureMap features;
    Point label_center;  // cells
};

/// Augmentations operate on the feature grid via analytic correspondence
/// fields, with label centers transformed the same way.
std::vector<Sample> augmented_samples(const FeatureMap& x, Point center_cells,
                                      const AugmentSpec& aug) {
    std::vector<Sample> samples;
    samples.push_back({x, center_cells});

    const int h = x.h, w = x.w;
    auto warp_with = [&](auto&& coord_fn) {
        CorrespondenceField c = CorrespondenceField::zeros(h, w);
        for (int y = 0; y < h; ++y) {
            for (int xx = 0; xx < w; ++xx) {
                const Point src = coord_fn(Point{static_cast<double>(y), static_cast<double>(xx)});
                c.y_at(y, xx) = src.y;
                c.x_at(y, xx) = src.x;
            }
        }
        FeatureMap warped = gsc::warp_features(x, c);
        warped.normalized = x.normalized;
        return warped;
    };

    if (aug.translation_px > 0.0) {
        const double d = aug.translation_px / x.stride;  // cells
        const Point shifts[4] = {{d, 0.0}, {-d, 0.0}, {0.0, d}, {0.0, -d}};
        for (const Point& s : shifts) {
            samples.push_back({warp_with([&](Point p) { return Point{p.y - s.y, p.x - s.x}; }),
                               {center_cells.y + s.y, center_cells.x + s.x}});
        }
    }
    if (aug.flip) {
        samples.push_back({warp_with([&](Point p) { return Point{p.y, (w - 1) - p.x}; }),
                           {center_cells.y, (w - 1) - center_cells.x}});
    }
    if (aug.rotation_deg > 0.0) {
        const double cy0 = (h - 1) / 2.0, cx0 = (w - 1) / 2.0;
        for (const double sign : {1.0, -1.0}) {
            const double th = sign * aug.rotation_deg * std::numbers::pi / 180.0;
            const double ct = std::cos(th), st = std::sin(th);
            // Content rotates by +th; sampling uses the inverse rotation.
            samples.push_back(
                {warp_with([&](Point p) {
                     const double dy = p.y - cy0, dx = p.x - cx0;
                     return Point{cy0 + st * dx + ct * dy, cx0 + ct * dx - st * dy};
                 }),
                 {cy0 + st * (center_cells.x - cx0) + ct * (center_cells.y - cy0),
                  cx0 + ct * (center_cells.x - cx0) - st * (center_cells.y - cy0)}});
        }
    }
    return samples;
}

}  // namespace

DcfModel init(const FeatureMap& x, const BBox& target, const DcfConfig& cfg) {
    require_valid(target, "dcf::init");
    const double crop_w = static_cast<double>(x.w) * x.stride;
    const double crop_h = static_cast<double>(x.h) * x.stride;
    if (target.x0() < 0.0 || target.y0() < 0.0 || target.x1() > crop_w || target.y1() > crop_h) {
        throw std::invalid_argument("dcf::init: target must lie inside the crop");
    }

    DcfModel m;
    m.h = x.h;
    m.w = x.w;
    m.c = x.c;
    m.stride = x.stride;
    m.lambda = cfg.lambda;
    m.learning_rate = cfg.learning_rate;
    m.label_sigma = std::max(cfg.label_sigma_factor * target.diagonal() / x.stride, 0.25);
    m.window = make_window(x.h, x.w, cfg.use_cosine_window);

    const Point center_cells{px_to_cell(target.cy, x.stride), px_to_cell(target.cx, x.stride)};
    const std::vector<Sample> samples = augmented_samples(x, center_cells, cfg.augment);

    const int spec = fft::spectrum_size(m.h, m.w);
    m.num.assign(static_cast<std::size_t>(m.c) * spec, {0.0, 0.0});
    m.den.assign(spec, 0.0);
    const double weight = 1.0 / samples.size();
    for (const Sample& s : samples) {
        const auto spectra = windowed_spectra(s.features, m.window);
        const ResponseMap label = gaussian_map(s.label_center, m.label_sigma, m.h, m.w);
        const SampleTargets t = sample_targets(spectra, m.c, m.h, m.w, label);
        for (std::size_t i = 0; i < m.num.size(); ++i) m.num[i] += weight * t.num[i];
        for (int f = 0; f < spec; ++f) m.den[f] += weight * t.den[f];
    }
    solve_filters(m);
    return m;
}

ResponseMap respond(const DcfModel& model, const FeatureMap& x) {
    if (x.h != model.h || x.w != model.w || x.c != model.c) {
        throw std::invalid_argument("dcf::respond: feature dims must match the model");
    }
    const int spec = fft::spectrum_size(model.h, model.w);
    const auto spectra = windowed_spectra(x, model.window);
    std::vector<std::complex<double>> r_hat(spec, {0.0, 0.0});
    for (int ch = 0; ch < model.c; ++ch) {
        const std::complex<double>* z = spectra.data() + static_cast<std::size_t>(ch) * spec;
        const std::complex<double>* f = model.filters.data() + static_cast<std::size_t>(ch) * spec;
        for (int i = 0; i < spec; ++i) r_hat[i] += f[i] * z[i];
    }
    ResponseMap r = ResponseMap::zeros(model.h, model.w);
    fft::irfft2(r_hat.data(), model.h, model.w, r.v.data());
    return r;
}

std::pair<DcfModel, UpdateDecision> maybe_update(const DcfModel& model, const FeatureMap& x,
                                                 const BBox& estimated,
                                                 const ResponseMap& response,
                                                 const UpdatePolicy& policy, int frame_idx) {
    UpdateDecision d;
    const Point peak = argmax_cell(response);
    d.main_peak = response.at(static_cast<int>(peak.y), static_cast<int>(peak.x));

    double radius = policy.suppression_radius_cells;
    if (radius <= 0.0) {
        radius = 0.5 * std::max(estimated.w, estimated.h) / model.stride;
    }
    for (int y = 0; y < response.h; ++y) {
        for (int xx = 0; xx < response.w; ++xx) {
            const double dy = y - peak.y, dx = xx - peak.x;
            if (dy * dy + dx * dx <= radius * radius) continue;
            d.distractor_peak = std::max(d.distractor_peak, response.at(y, xx));
        }
    }

    if (d.main_peak < policy.score_gate) {
        d.reason = "low_confidence";
        return {model, d};
    }
    const bool periodic = policy.period >= 1 && frame_idx % policy.period == 0;
    const bool distractor = d.distractor_peak > policy.distractor_ratio * d.main_peak;
    if (periodic) {
        d.reason = "periodic";
    } else if (distractor) {
        d.reason = "distractor";
    } else {
        d.reason = "not_scheduled";
        return {model, d};
    }

    DcfModel next = model;
    const auto spectra = windowed_spectra(x, model.window);
    const Point center_cells{px_to_cell(estimated.cy, model.stride),
                             px_to_cell(estimated.cx, model.stride)};
    const ResponseMap label = gaussian_map(center_cells, model.label_sigma, model.h, model.w);
    const SampleTargets t = sample_targets(spectra, model.c, model.h, model.w, label);
    const double lr = model.learning_rate;
    for (std::size_t i = 0; i < next.num.size(); ++i) {
        next.num[i] = (1.0 - lr) * next.num[i] + lr * t.num[i];
    }
    for (std::size_t f = 0; f < next.den.size(); ++f) {
        next.den[f] = (1.0 - lr) * next.den[f] + lr * t.den[f];
    }
    solve_filters(next);
    d.updated = true;
    return {next, d};
}

BBox estimate_scale(const DcfModel& model, const Frame& frame, const BBox& prev,
                    const DcfConfig& cfg, const features::FeatureConfig& feat_cfg,
                    double search_area_factor, int crop_size) {
    if (cfg.scales.empty()) {
        throw std::invalid_argument("dcf::estimate_scale: scale list must not be empty");
    }
    require_valid(prev, "dcf::estimate_scale");

    double best_score = -std::numeric_limits<double>::infinity();
    double best_scale = 1.0;
    bool first = true;
    for (const double s : cfg.scales) {
        if (!(s > 0.0)) {
            throw std::invalid_argument("dcf::estimate_scale: scales must be positive");
        }
        const double side = search_area_factor * std::sqrt(prev.w * prev.h) * s;
        const CropTransform t = make_crop_transform({prev.cy, prev.cx}, side, crop_size);
        const Frame crop = crop_resample(frame, t);
        const FeatureMap x = features::extract(crop, feat_cfg);
        const ResponseMap r = respond(model, x);
        const double penalty = (s == 1.0) ? 1.0 : cfg.scale_penalty;
        const double score = max_value(r) * penalty;
        const bool better =
            first || score > best_score ||
            (score == best_score && std::abs(s - 1.0) < std::abs(best_scale - 1.0)) ||
            (score == best_score && std::abs(s - 1.0) == std::abs(best_scale - 1.0) &&
             s < best_scale);
        if (better) {
            best_score = score;
            best_scale = s;
            first = false;
        }
    }
    const double damped = 1.0 + cfg.scale_damping * (best_scale - 1.0);
    return {prev.cx, prev.cy, prev.w * damped, prev.h * damped};
}

}  // namespace gsctrack::dcf
