#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsctrack/types.hpp"

namespace gsctrack::synth {

/// Textured blob: a rectangle of seeded value noise that moves rigidly with
/// its center. Two blobs with the same texture_seed are pixel-identical.
struct BlobSpec {
    double w = 48.0;
    double h = 48.0;
    // Optional linear size ramp across the sequence; <= 0 keeps the size fixed.
    double end_w = 0.0;
    double end_h = 0.0;
    std::uint64_t texture_seed = 1;
};

/// Trajectory waypoint: the blob center at a given frame. Positions between
/// waypoints are linearly interpolated; before the first and after the last
/// waypoint the position is held.
struct Waypoint {
    int frame = 0;
    double cx = 0.0;
    double cy = 0.0;
};

struct ObjectSpec {
    BlobSpec blob;
    std::vector<Waypoint> waypoints;
};

/// Flat-black rectangle placed over the target position at `onset`, present
/// for `duration` frames. coverage in (0, 1] shifts it sideways so only that
/// fraction of the target is covered; scale sizes it relative to the target.
struct OccluderSpec {
    int onset = -1;  // < 0 disables the occluder
    int duration = 0;
    double coverage = 1.0;
    double scale = 2.5;
};

struct ScenarioSpec {
    int image_w = 320;
    int image_h = 240;
    int n_frames = 2;
    ObjectSpec target;
    std::vector<ObjectSpec> distractors;
    double max_step_frac = 0.35;  // per-frame displacement cap, fraction of min image dim
    OccluderSpec occluder;
    std::uint64_t background_seed = 0;
    double background_vel_x = 0.0;  // background texture motion, px/frame
    double background_vel_y = 0.0;
    std::uint64_t rng_seed = 0;
    int corr_stride = 16;  // grid resolution of the ground-truth correspondence fields
};

struct OcclusionEvent {
    int start = 0;  // first covered frame
    int end = 0;    // one past the last covered frame
};

/// Rendered sequence with exact ground truth. gt_correspondences[t] maps the
/// frame-t grid to frame t-1 (feature-cell units at corr_stride);
/// gt_correspondences[0] is the identity field.
struct SequenceRecord {
    std::vector<Frame> frames;
    std::vector<BBox> gt_boxes;
    std::vector<CorrespondenceField> gt_correspondences;
    std::vector<OcclusionEvent> event_log;
    int corr_stride = 16;
};

/// Deterministic rendering of the scenario; throws std::invalid_argument on
/// an invalid spec (too few frames, out-of-range waypoints, oversized steps).
SequenceRecord generate(const ScenarioSpec& spec);

/// Canned scenarios: "twin_distractor" (two pixel-identical blobs passing
/// near each other while the target makes a fast maneuver), "fast_motion"
/// (repeated jumps up to ~30% of the search region beside an identical
/// distractor), "occlusion" (full cover for 20 frames), "crossing"
/// (intersecting trajectories). Unknown names throw std::invalid_argument.
ScenarioSpec preset(const std::string& name, std::uint64_t seed);

/// Object position at a frame (linear waypoint interpolation, clamped).
Point object_center(const ObjectSpec& obj, int frame);

/// Object size at a frame (linear ramp when end_w/end_h are set).
Point object_size(const ObjectSpec& obj, int frame, int n_frames);

/// Axis-aligned occluder rectangle for the generated sequence, valid while
/// the occluder is active (used by tests to pick occluded cells).
BBox occluder_box(const ScenarioSpec& spec);

}  // namespace gsctrack::synth
