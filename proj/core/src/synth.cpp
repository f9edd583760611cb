#include "gsctrack/synth.hpp"

#include <algorithm>
#include <cmath>

namespace gsctrack::synth {

namespace {

inline std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline double u01(std::uint64_t x) { return (x >> 11) * (1.0 / 9007199254740992.0); }

inline double lattice(std::uint64_t seed, std::int64_t ix, std::int64_t iy) {
    std::uint64_t k = seed;
    k = splitmix(k ^ static_cast<std::uint64_t>(ix) * 0x9E3779B97F4A7C15ULL);
    k = splitmix(k ^ static_cast<std::uint64_t>(iy) * 0xC2B2AE3D27D4EB4FULL);
    return u01(k);
}

double value_noise(std::uint64_t seed, double x, double y, double cell) {
    const double gx = x / cell, gy = y / cell;
    const double fx = std::floor(gx), fy = std::floor(gy);
    const std::int64_t ix = static_cast<std::int64_t>(fx), iy = static_cast<std::int64_t>(fy);
    const double tx = gx - fx, ty = gy - fy;
    const double v00 = lattice(seed, ix, iy), v01 = lattice(seed, ix + 1, iy);
    const double v10 = lattice(seed, ix, iy + 1), v11 = lattice(seed, ix + 1, iy + 1);
    return (1 - ty) * ((1 - tx) * v00 + tx * v01) + ty * ((1 - tx) * v10 + tx * v11);
}

// Two octaves keep the texture structured at both cell and sub-cell scales.
double texture(std::uint64_t seed, double x, double y) {
    return 0.65 * value_noise(seed, x, y, 7.0) + 0.35 * value_noise(seed ^ 0xABCDULL, x, y, 3.0);
}

struct ActiveOccluder {
    bool active = false;
    BBox box;
};

ActiveOccluder occluder_at(const ScenarioSpec& spec, int t) {
    if (spec.occluder.onset < 0 || t < spec.occluder.onset ||
        t >= spec.occluder.onset + spec.occluder.duration) {
        return {};
    }
    return {true, occluder_box(spec)};
}

inline bool inside(const BBox& b, double px, double py) {
    return std::abs(px - b.cx) <= b.w / 2.0 && std::abs(py - b.cy) <= b.h / 2.0;
}

void validate(const ScenarioSpec& spec) {
    if (spec.n_frames < 2) throw std::invalid_argument("synth: n_frames must be >= 2");
    if (spec.image_w < 16 || spec.image_h < 16) {
        throw std::invalid_argument("synth: image too small");
    }
    if (spec.corr_stride < 1 || spec.image_w % spec.corr_stride != 0 ||
        spec.image_h % spec.corr_stride != 0) {
        throw std::invalid_argument("synth: image dims must be divisible by corr_stride");
    }
    auto check_object = [&](const ObjectSpec& obj, const char* what) {
        if (obj.waypoints.empty()) {
            throw std::invalid_argument(std::string("synth: ") + what + " needs waypoints");
        }
        for (std::size_t i = 1; i < obj.waypoints.size(); ++i) {
            if (obj.waypoints[i].frame <= obj.waypoints[i - 1].frame) {
                throw std::invalid_argument("synth: waypoint frames must increase");
            }
        }
        if (!(obj.blob.w > 0.0) || !(obj.blob.h > 0.0)) {
            throw std::invalid_argument("synth: blob dims must be positive");
        }
        const double max_step = spec.max_step_frac * std::min(spec.image_w, spec.image_h);
        Point prev = object_center(obj, 0);
        for (int t = 1; t < spec.n_frames; ++t) {
            const Point cur = object_center(obj, t);
            const double step = std::hypot(cur.x - prev.x, cur.y - prev.y);
            if (step > max_step + 1e-9) {
                throw std::invalid_argument("synth: per-frame displacement exceeds max_step_frac");
            }
            if (cur.x < 0.0 || cur.x >= spec.image_w || cur.y < 0.0 || cur.y >= spec.image_h) {
                throw std::invalid_argument("synth: object center leaves the image");
            }
            prev = cur;
        }
    };
    check_object(spec.target, "target");
    for (const auto& d : spec.distractors) check_object(d, "distractor");
}

}  // namespace

Point object_center(const ObjectSpec& obj, int frame) {
    const auto& wp = obj.waypoints;
    if (frame <= wp.front().frame) return {wp.front().cy, wp.front().cx};
    if (frame >= wp.back().frame) return {wp.back().cy, wp.back().cx};
    for (std::size_t i = 1; i < wp.size(); ++i) {
        if (frame <= wp[i].frame) {
            const double t = static_cast<double>(frame - wp[i - 1].frame) /
                             (wp[i].frame - wp[i - 1].frame);
            return {wp[i - 1].cy + t * (wp[i].cy - wp[i - 1].cy),
                    wp[i - 1].cx + t * (wp[i].cx - wp[i - 1].cx)};
        }
    }
    return {wp.back().cy, wp.back().cx};
}

Point object_size(const ObjectSpec& obj, int frame, int n_frames) {
    const BlobSpec& b = obj.blob;
    if (b.end_w <= 0.0 || b.end_h <= 0.0 || n_frames < 2) return {b.h, b.w};
    const double t = static_cast<double>(frame) / (n_frames - 1);
    return {b.h + t * (b.end_h - b.h), b.w + t * (b.end_w - b.w)};
}

BBox occluder_box(const ScenarioSpec& spec) {
    const Point c = object_center(spec.target, spec.occluder.onset);
    const Point s = object_size(spec.target, spec.occluder.onset, spec.n_frames);
    const double ow = spec.occluder.scale * s.x;
    const double oh = spec.occluder.scale * s.y;
    // coverage < 1 slides the occluder sideways so only part of the target is hidden.
    const double shift = (1.0 - spec.occluder.coverage) * (ow / 2.0 + s.x / 2.0);
    return {c.x + shift, c.y, ow, oh};
}

SequenceRecord generate(const ScenarioSpec& spec) {
    validate(spec);

    SequenceRecord rec;
    rec.corr_stride = spec.corr_stride;
    rec.frames.reserve(spec.n_frames);
    rec.gt_boxes.reserve(spec.n_frames);
    rec.gt_correspondences.reserve(spec.n_frames);
    if (spec.occluder.onset >= 0 && spec.occluder.duration > 0) {
        rec.event_log.push_back(
            {spec.occluder.onset, spec.occluder.onset + spec.occluder.duration});
    }

    const int gh = spec.image_h / spec.corr_stride;
    const int gw = spec.image_w / spec.corr_stride;

    // Draw order: background, distractors, target, occluder. Ownership for
    // correspondence purposes follows the same stacking.
    enum class Owner { Background, Distractor, Target, Occluder };
    struct OwnerRef {
        Owner kind;
        int index;  // distractor index when kind == Distractor
    };

    auto owner_at = [&](int t, double px, double py) -> OwnerRef {
        const ActiveOccluder occ = occluder_at(spec, t);
        if (occ.active && inside(occ.box, px, py)) return {Owner::Occluder, 0};
        const Point tc = object_center(spec.target, t);
        const Point ts = object_size(spec.target, t, spec.n_frames);
        if (inside({tc.x, tc.y, ts.x, ts.y}, px, py)) return {Owner::Target, 0};
        for (int i = static_cast<int>(spec.distractors.size()) - 1; i >= 0; --i) {
            const Point dc = object_center(spec.distractors[i], t);
            const Point ds = object_size(spec.distractors[i], t, spec.n_frames);
            if (inside({dc.x, dc.y, ds.x, ds.y}, px, py)) return {Owner::Distractor, i};
        }
        return {Owner::Background, 0};
    };

    auto render_pixel = [&](int t, double px, double py) -> double {
        const OwnerRef who = owner_at(t, px, py);
        switch (who.kind) {
            case Owner::Occluder:
                return 0.0;
            case Owner::Target: {
                const Point c = object_center(spec.target, t);
                const Point s0 = object_size(spec.target, 0, spec.n_frames);
                const Point st = object_size(spec.target, t, spec.n_frames);
                const double u = (px - c.x) * (s0.x / st.x);
                const double v = (py - c.y) * (s0.y / st.y);
                return 0.55 + 0.45 * texture(spec.target.blob.texture_seed, u, v);
            }
            case Owner::Distractor: {
                const ObjectSpec& d = spec.distractors[who.index];
                const Point c = object_center(d, t);
                const Point s0 = object_size(d, 0, spec.n_frames);
                const Point st = object_size(d, t, spec.n_frames);
                const double u = (px - c.x) * (s0.x / st.x);
                const double v = (py - c.y) * (s0.y / st.y);
                return 0.55 + 0.45 * texture(d.blob.texture_seed, u, v);
            }
            case Owner::Background:
            default: {
                const double bx = px - spec.background_vel_x * t;
                const double by = py - spec.background_vel_y * t;
                return 0.45 * texture(spec.background_seed, bx, by);
            }
        }
    };

    for (int t = 0; t < spec.n_frames; ++t) {
        Frame f = Frame::zeros(spec.image_w, spec.image_h, 1);
        for (int y = 0; y < spec.image_h; ++y) {
            for (int x = 0; x < spec.image_w; ++x) {
                const double v = render_pixel(t, x, y);
                // Quantize like an 8-bit source so on-disk round trips are exact.
                f.at(y, x, 0) = std::lround(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0;
            }
        }
        rec.frames.push_back(std::move(f));

        const Point tc = object_center(spec.target, t);
        const Point ts = object_size(spec.target, t, spec.n_frames);
        rec.gt_boxes.push_back({tc.x, tc.y, ts.x, ts.y});

        if (t == 0) {
            rec.gt_correspondences.push_back(CorrespondenceField::identity(gh, gw));
            continue;
        }
        CorrespondenceField c = CorrespondenceField::zeros(gh, gw);
        for (int gy = 0; gy < gh; ++gy) {
            for (int gx = 0; gx < gw; ++gx) {
                const double px = cell_to_px(gx, spec.corr_stride);
                const double py = cell_to_px(gy, spec.corr_stride);
                const OwnerRef who = owner_at(t, px, py);
                double sx = px, sy = py;
                switch (who.kind) {
                    case Owner::Occluder:
                        break;  // static occluder: identity
                    case Owner::Target:
                    case Owner::Distractor: {
                        const ObjectSpec& obj = who.kind == Owner::Target
                                                    ? spec.target
                                                    : spec.distractors[who.index];
                        const Point c1 = object_center(obj, t);
                        const Point c0 = object_center(obj, t - 1);
                        const Point s1 = object_size(obj, t, spec.n_frames);
                        const Point s0 = object_size(obj, t - 1, spec.n_frames);
                        sx = c0.x + (px - c1.x) * (s0.x / s1.x);
                        sy = c0.y + (py - c1.y) * (s0.y / s1.y);
                        break;
                    }
                    case Owner::Background:
                    default:
                        sx = px - spec.background_vel_x;
                        sy = py - spec.background_vel_y;
                        break;
                }
                c.y_at(gy, gx) = px_to_cell(sy, spec.corr_stride);
                c.x_at(gy, gx) = px_to_cell(sx, spec.corr_stride);
            }
        }
        rec.gt_correspondences.push_back(std::move(c));
    }
    return rec;
}

ScenarioSpec preset(const std::string& name, std::uint64_t seed) {
    // Seeded jitter in [-1, 1] so each seed gives a distinct but bounded layout.
    auto jitter = [&](std::uint64_t salt) {
        return 2.0 * u01(splitmix(seed * 0x9E3779B97F4A7C15ULL + salt)) - 1.0;
    };

    ScenarioSpec s;
    s.rng_seed = seed;
    s.background_seed = splitmix(seed ^ 0xB06ULL);
    s.target.blob.texture_seed = splitmix(seed ^ 0x7A6ULL);

    if (name == "twin_distractor") {
        s.n_frames = 40;
        const double jy = 6.0 * jitter(1);
        const double jx = 8.0 * jitter(2);
        // Target drifts right, then one fast jump up-left while the twin
        // passes below its old position.
        s.target.waypoints = {{0, 80.0 + jx, 120.0 + jy},
                              {20, 160.0 + jx, 120.0 + jy},
                              {21, 140.0 + jx, 48.0 + jy},
                              {39, 120.0 + jx, 40.0 + jy}};
        ObjectSpec twin;
        twin.blob = s.target.blob;  // identical texture: the hardest distractor
        const double ty = 182.0 + 4.0 * jitter(3);
        twin.waypoints = {{0, 304.0, ty}, {39, 16.0, ty - 10.0}};
        s.distractors.push_back(twin);
    } else if (name == "fast_motion") {
        s.n_frames = 31;
        // Diagonal jumps of ~73 px (0.3 of the 240 px search side) every
        // third frame, with calm frames between; an identical-texture twin
        // rides a parallel track 70 px below.
        const double j = 52.0;
        double cx = 70.0 + 6.0 * jitter(1);
        double cy = 78.0 + 6.0 * jitter(2);
        double dir = 1.0;
        s.target.waypoints.push_back({0, cx, cy});
        for (int t = 3; t <= 30; t += 3) {
            cx += j * 0.45;
            cy += dir * j;
            dir = -dir;
            s.target.waypoints.push_back({t, cx, cy});
            if (t + 2 <= 30) s.target.waypoints.push_back({t + 2, cx + 2.0, cy});
        }
        ObjectSpec twin;
        twin.blob = s.target.blob;
        twin.waypoints = {{0, 80.0, 178.0 + 4.0 * jitter(3)}, {30, 220.0, 182.0}};
        s.distractors.push_back(twin);
    } else if (name == "occlusion") {
        s.n_frames = 48;
        const double jy = 6.0 * jitter(1);
        s.target.waypoints = {{0, 104.0, 120.0 + jy},
                              {14, 160.0, 120.0 + jy},
                              {44, 160.0, 120.0 + jy},
                              {47, 166.0, 120.0 + jy}};
        s.occluder.onset = 18;
        s.occluder.duration = 20;
        s.occluder.coverage = 1.0;
        s.occluder.scale = 2.5;
    } else if (name == "crossing") {
        s.n_frames = 30;
        const double jy = 6.0 * jitter(1);
        s.target.waypoints = {{0, 60.0, 80.0 + jy}, {29, 260.0, 170.0 + jy}};
        ObjectSpec other;
        other.blob.texture_seed = splitmix(seed ^ 0xD15ULL);
        other.waypoints = {{0, 260.0, 80.0 - jy}, {29, 60.0, 170.0 - jy}};
        s.distractors.push_back(other);
    } else {
        throw std::invalid_argument("synth::preset: unknown preset '" + name + "'");
    }
    return s;
}

}  // namespace gsctrack::synth
