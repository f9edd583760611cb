#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gsctrack/tracker.hpp"
#include "gsctrack/types.hpp"

namespace gsctrack::bench {

/// On-disk sequence: numbered image files plus optional OTB-style ground
/// truth (one comma-separated "x,y,w,h" corner-form line per frame).
struct SequenceSource {
    std::filesystem::path dir;
    std::string name;
    std::vector<std::filesystem::path> frame_paths;
    std::vector<BBox> ground_truth;  // empty when no groundtruth file exists

    bool has_ground_truth() const { return !ground_truth.empty(); }
    int size() const { return static_cast<int>(frame_paths.size()); }
};

struct EvalReport {
    std::vector<double> per_frame_iou;
    std::vector<double> success_curve;  // 51 thresholds, 0.00 .. 1.00
    double success_auc = 0.0;
    double precision_20px = 0.0;
    int failure_count = 0;
    double mean_iou = 0.0;
    double mean_fps = 0.0;
};

enum class EvalMode { OnePass, Reset };

/// Simplified reset protocol: after a failure (IoU == 0) the tracker is
/// re-initialized from ground truth reinit_gap frames later; the first
/// burn_in frames after every (re)initialization are excluded from accuracy.
struct ResetProtocol {
    int reinit_gap = 5;
    int burn_in = 10;
};

/// Loads a sequence directory: frames sorted by numeric filename, ground
/// truth from groundtruth.txt (or groundtruth_rect.txt). Throws
/// std::runtime_error with a line number on malformed ground truth, and when
/// the frame and line counts disagree.
SequenceSource load_sequence(const std::filesystem::path& path);

/// Intersection over union; disjoint boxes give 0.
double iou(const BBox& a, const BBox& b);

/// Fraction of frames with IoU >= threshold, for the 51 thresholds i/50.
std::vector<double> success_curve(const std::vector<double>& ious);

/// Mean of the success curve (area under it on the unit threshold grid).
double success_auc(const std::vector<double>& curve);

/// Metrics from prediction/ground-truth box lists (used by both eval modes).
EvalReport make_report(const std::vector<BBox>& predictions, const std::vector<BBox>& gt,
                       double mean_fps);

/// Runs the tracker over the sequence. OnePass initializes once from the
/// first ground-truth box; Reset counts IoU == 0 failures and re-initializes
/// per the protocol. Requires ground truth.
EvalReport evaluate(const tracker::TrackerConfig& cfg, const SequenceSource& source,
                    EvalMode mode, const ResetProtocol& protocol = {});

/// Writes boxes in the ground-truth text format (corner form, comma
/// separated, one newline-terminated line per frame) with locale-independent
/// shortest round-trip number formatting.
void save_results(const std::vector<BBox>& boxes, const std::filesystem::path& path);

/// Parses a results/ground-truth file (same format as load_sequence expects).
std::vector<BBox> load_results(const std::filesystem::path& path);

}  // namespace gsctrack::bench
