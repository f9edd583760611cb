#include "gsctrack/tracker.hpp"

#include <algorithm>
#include <cmath>

#include "gsctrack/grid_ops.hpp"
#include "gsctrack/gsc.hpp"

namespace gsctrack::tracker {

namespace {

void validate_config(const TrackerConfig& cfg) {
    if (!(cfg.search_area_factor > 1.0)) {
        throw std::invalid_argument("tracker: search_area_factor must be > 1");
    }
    if (cfg.crop_size < cfg.feature.cell_stride ||
        cfg.crop_size % cfg.feature.cell_stride != 0) {
        throw std::invalid_argument("tracker: crop_size must be divisible by the feature stride");
    }
}

/// Quadratic sub-cell peak refinement along each axis, on the long-term map.
Point refine_subcell(const ResponseMap& r, Point cell) {
    auto refine_1d = [](double a, double b, double c) {
        const double denom = a + c - 2.0 * b;
        if (!(denom < -1e-12)) return 0.0;
        return std::clamp((a - c) / (2.0 * denom), -0.5, 0.5);
    };
    const int y = static_cast<int>(cell.y), x = static_cast<int>(cell.x);
    Point out = cell;
    if (y > 0 && y < r.h - 1) {
        out.y += refine_1d(r.at(y - 1, x), r.at(y, x), r.at(y + 1, x));
    }
    if (x > 0 && x < r.w - 1) {
        out.x += refine_1d(r.at(y, x - 1), r.at(y, x), r.at(y, x + 1));
    }
    return out;
}

/// No-GSC short-term baseline: a 3x3 ROI-pooled target template from the
/// previous features, cross-correlated against the current features.
ResponseMap template_response(const FeatureMap& prev, const BBox& prev_box_crop_px,
                              const FeatureMap& cur) {
    const int c = prev.c;
    std::vector<double> tmpl(static_cast<std::size_t>(9) * c, 0.0);
    const double y0 = px_to_cell(prev_box_crop_px.y0(), prev.stride);
    const double x0 = px_to_cell(prev_box_crop_px.x0(), prev.stride);
    const double bh = prev_box_crop_px.h / prev.stride;
    const double bw = prev_box_crop_px.w / prev.stride;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double sy = y0 + (i + 0.5) / 3.0 * bh;
            const double sx = x0 + (j + 0.5) / 3.0 * bw;
            bilinear_sample(prev, sy, sx,
                            std::span<double>(tmpl.data() + (static_cast<std::size_t>(i) * 3 + j) * c,
                                              static_cast<std::size_t>(c)));
        }
    }
    ResponseMap r = ResponseMap::zeros(cur.h, cur.w);
    for (int y = 0; y < cur.h; ++y) {
        for (int x = 0; x < cur.w; ++x) {
            double acc = 0.0;
            for (int i = 0; i < 3; ++i) {
                const int yy = y + i - 1;
                if (yy < 0 || yy >= cur.h) continue;
                for (int j = 0; j < 3; ++j) {
                    const int xx = x + j - 1;
                    if (xx < 0 || xx >= cur.w) continue;
                    const double* t = tmpl.data() + (static_cast<std::size_t>(i) * 3 + j) * c;
                    const double* f = cur.cell(yy, xx);
                    for (int ch = 0; ch < c; ++ch) acc += t[ch] * f[ch];
                }
            }
            r.at(y, x) = std::max(acc / 9.0, 0.0);
        }
    }
    return r;
}

}  // namespace

std::pair<Frame, CropTransform> crop_search_region(const Frame& frame, const BBox& box,
                                                   const TrackerConfig& cfg) {
    require_valid(box, "tracker::crop_search_region");
    validate_config(cfg);
    const double side = cfg.search_area_factor * std::sqrt(box.w * box.h);
    const CropTransform t = make_crop_transform({box.cy, box.cx}, side, cfg.crop_size);
    return {crop_resample(frame, t), t};
}

TrackerState init(const Frame& first_frame, const BBox& init_box, const TrackerConfig& cfg) {
    validate_config(cfg);
    require_valid(init_box, "tracker::init");
    if (init_box.x0() < 0.0 || init_box.y0() < 0.0 || init_box.x1() > first_frame.width ||
        init_box.y1() > first_frame.height) {
        throw std::invalid_argument("tracker::init: init_box must lie inside the frame");
    }

    auto [crop, transform] = crop_search_region(first_frame, init_box, cfg);
    FeatureMap feats = features::extract(crop, cfg.feature);

    TrackerState s;
    s.cfg = cfg;
    s.current_box = init_box;
    s.dcf_model = dcf::init(feats, transform.box_to_crop(init_box), cfg.dcf);
    s.prev_long_response = dcf::respond(s.dcf_model, feats);
    s.prev_crop_features = std::move(feats);
    s.prev_transform = transform;
    s.fusion_state = fusion::FusionState::fresh(cfg.fusion);
    s.frame_idx = 0;
    s.initialized = true;
    return s;
}

StepResult step(const TrackerState& state, const Frame& frame) {
    if (!state.initialized) {
        throw std::logic_error("tracker::step: state is not initialized");
    }
    const TrackerConfig& cfg = state.cfg;
    const int stride = cfg.feature.cell_stride;

    auto [crop, transform] = crop_search_region(frame, state.current_box, cfg);
    FeatureMap feats = features::extract(crop, cfg.feature);
    const ResponseMap r_l = dcf::respond(state.dcf_model, feats);
    const double long_peak = max_value(r_l);

    StepDiagnostics diag;
    diag.frame_idx = state.frame_idx + 1;
    diag.long_peak = long_peak;

    bool short_active = !cfg.ablation.disable_short_term && !state.fusion_state.lost;
    ResponseMap r_s;
    if (short_active) {
        // The previous box expressed in the previous crop's coordinates; both
        // the reference map and the correspondence live on that grid.
        const BBox prev_box_crop = state.prev_transform.box_to_crop(state.current_box);
        if (cfg.ablation.disable_gsc) {
            r_s = template_response(state.prev_crop_features, prev_box_crop, feats);
        } else {
            const gsc::CorrelationVolume vol =
                gsc::correlation_volume(state.prev_crop_features, feats);
            const CorrespondenceField corr = gsc::extract_correspondence(
                vol, cfg.gsc.temperature, cfg.gsc.search_radius_cells);
            ConfidenceMap conf;
            if (std::isfinite(cfg.ablation.confidence_override)) {
                conf = ConfidenceMap::zeros(feats.h, feats.w);
                std::fill(conf.v.begin(), conf.v.end(), cfg.ablation.confidence_override);
            } else if (cfg.ablation.disable_confidence) {
                conf = ConfidenceMap::zeros(feats.h, feats.w);
                std::fill(conf.v.begin(), conf.v.end(), 1.0);
            } else {
                conf = gsc::estimate_confidence(state.prev_crop_features, feats, corr);
            }
            double conf_max = 0.0;
            for (double v : conf.v) conf_max = std::max(conf_max, v);
            if (conf_max <= 0.0) {
                // No correspondence carries any confidence: the short-term
                // model has nothing to say, fall back to long-term only.
                short_active = false;
            } else {
                const double prev_peak =
                    bilinear_sample(state.prev_long_response,
                                    px_to_cell(prev_box_crop.cy, stride),
                                    px_to_cell(prev_box_crop.cx, stride));
                const ResponseMap m = fusion::reference_map(
                    prev_peak, prev_box_crop, state.prev_long_response, cfg.fusion, stride);
                r_s = fusion::short_response(m, corr, conf, cfg.fusion);
            }
        }
    }

    Point peak_cell;
    if (short_active) {
        auto [fused, cell] = fusion::fuse(r_l, r_s, state.fusion_state, cfg.fusion);
        peak_cell = cell;
        diag.short_term_active = true;
        diag.short_peak = max_value(r_s);
        diag.fusion_weight_used = state.fusion_state.current_weight;
    } else {
        peak_cell = argmax_cell(r_l);
    }

    const Point refined = refine_subcell(r_l, peak_cell);
    const Point center_frame = transform.to_frame(
        {cell_to_px(refined.y, stride), cell_to_px(refined.x, stride)});

    // Width and height carry over from the last frame, then the scale search refines them.
    BBox new_box{center_frame.x, center_frame.y, state.current_box.w, state.current_box.h};
    new_box = dcf::estimate_scale(state.dcf_model, frame, new_box, cfg.dcf, cfg.feature,
                                  cfg.search_area_factor, cfg.crop_size);

    const fusion::FusionState next_fusion =
        fusion::update_lost_state(state.fusion_state, long_peak, cfg.fusion);

    auto [next_model, decision] =
        dcf::maybe_update(state.dcf_model, feats, transform.box_to_crop(new_box), r_l,
                          cfg.dcf.update, state.frame_idx + 1);

    StepResult out;
    out.state.cfg = cfg;
    out.state.current_box = new_box;
    out.state.prev_crop_features = std::move(feats);
    out.state.prev_long_response = r_l;
    out.state.prev_transform = transform;
    out.state.dcf_model = std::move(next_model);
    out.state.fusion_state = next_fusion;
    out.state.frame_idx = state.frame_idx + 1;
    out.state.initialized = true;
    out.box = new_box;

    diag.fusion_weight = next_fusion.current_weight;
    diag.lost = next_fusion.lost;
    diag.update = decision;
    diag.box = new_box;
    out.diag = diag;
    return out;
}

}  // namespace gsctrack::tracker
