#include "gsctrack/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsctrack/grid_ops.hpp"

namespace gsctrack::fusion {

ResponseMap reference_map(double prev_peak, const BBox& prev_box,
                          const ResponseMap& prev_long_response, const FusionParams& params,
                          int stride) {
    require_valid(prev_box, "fusion::reference_map");
    const Point center{px_to_cell(prev_box.cy, stride), px_to_cell(prev_box.cx, stride)};
    ResponseMap m = gaussian_map(center, params.ref_sigma, prev_long_response.h,
                                 prev_long_response.w);
    if (params.reference_elementwise) {
        for (int y = 0; y < m.h; ++y) {
            for (int x = 0; x < m.w; ++x) {
                m.at(y, x) *= std::max(prev_long_response.at(y, x), 0.0);
            }
        }
    } else {
        // Negative previous scores carry no reference weight.
        const double scale = std::max(prev_peak, 0.0);
        for (double& v : m.v) v *= scale;
    }
    return m;
}

ResponseMap short_response(const ResponseMap& m, const CorrespondenceField& c,
                           const ConfidenceMap& s, const FusionParams& params) {
    if (c.h != m.h || c.w != m.w || s.h != m.h || s.w != m.w) {
        throw std::invalid_argument("fusion::short_response: shapes must agree");
    }
    ResponseMap out = ResponseMap::zeros(m.h, m.w);
    for (int y = 0; y < m.h; ++y) {
        for (int x = 0; x < m.w; ++x) {
            const double warped = bilinear_sample(m, c.y_at(y, x), c.x_at(y, x));
            const double clipped = params.t_s + std::max(s.at(y, x) - params.t_s, 0.0);
            out.at(y, x) = clipped * warped;
        }
    }
    return out;
}

BinaryMask local_max_mask(const ResponseMap& r_l, int k) {
    if (k < 1) {
        throw std::invalid_argument("fusion::local_max_mask: kernel must be >= 1");
    }
    // Centered window; for even k the extra cell goes to the high side.
    const int lo = (k - 1) / 2;
    const int hi = k / 2;
    BinaryMask mask = BinaryMask::zeros(r_l.h, r_l.w);
    for (int y = 0; y < r_l.h; ++y) {
        for (int x = 0; x < r_l.w; ++x) {
            const int y0 = std::max(0, y - lo), y1 = std::min(r_l.h - 1, y + hi);
            const int x0 = std::max(0, x - lo), x1 = std::min(r_l.w - 1, x + hi);
            double best = -std::numeric_limits<double>::infinity();
            for (int yy = y0; yy <= y1; ++yy) {
                for (int xx = x0; xx <= x1; ++xx) {
                    best = std::max(best, r_l.at(yy, xx));
                }
            }
            mask.at(y, x) = (r_l.at(y, x) >= best - 1e-9) ? 1 : 0;
        }
    }
    return mask;
}

std::pair<ResponseMap, Point> fuse(const ResponseMap& r_l, const ResponseMap& r_s,
                                   const FusionState& state, const FusionParams& params) {
    if (r_s.h != r_l.h || r_s.w != r_l.w) {
        throw std::invalid_argument("fusion::fuse: response shapes must agree");
    }
    if (state.current_weight == 0.0) {
        return {r_l, argmax_cell(r_l)};
    }
    const BinaryMask mask = local_max_mask(r_l, params.k);
    ResponseMap fused = r_l;
    for (int y = 0; y < r_l.h; ++y) {
        for (int x = 0; x < r_l.w; ++x) {
            const double add = state.current_weight * (mask.at(y, x) ? r_s.at(y, x) : 0.0);
            // Skip exact-zero contributions so the long-term values pass
            // through bit-identical (including signed zeros).
            if (add != 0.0) fused.at(y, x) += add;
        }
    }
    return {fused, argmax_cell(fused)};
}

FusionState update_lost_state(const FusionState& state, double peak, const FusionParams& params) {
    FusionState next = state;
    next.last_response_peak = peak;
    if (peak < params.lost_threshold) {
        if (!state.lost) {
            next.lost = true;
        }
        next.current_weight = 0.0;
    } else if (state.lost) {
        // Reacquired: one more completed loss episode, weight decays per episode.
        next.lost = false;
        next.loss_episodes = state.loss_episodes + 1;
        next.current_weight = params.w_fuse * std::pow(params.decay, next.loss_episodes);
    }
    return next;
}

}  // namespace gsctrack::fusion
