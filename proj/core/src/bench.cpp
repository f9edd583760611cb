#include "gsctrack/bench.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gsctrack/image_io.hpp"

namespace gsctrack::bench {

namespace {

[[noreturn]] void data_error(const std::string& what) { throw std::runtime_error(what); }

bool numeric_stem_value(const std::filesystem::path& p, long long& out) {
    const std::string stem = p.stem().string();
    std::string digits;
    for (char c : stem) {
        if (std::isdigit(static_cast<unsigned char>(c))) digits.push_back(c);
    }
    if (digits.empty()) return false;
    out = std::stoll(digits);
    return true;
}

double parse_number(std::string_view token, const std::filesystem::path& file, int line) {
    // Trim surrounding whitespace; from_chars is locale-independent.
    std::size_t b = 0, e = token.size();
    while (b < e && std::isspace(static_cast<unsigned char>(token[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(token[e - 1]))) --e;
    double value = 0.0;
    const auto res = std::from_chars(token.data() + b, token.data() + e, value);
    if (res.ec != std::errc() || res.ptr != token.data() + e || b == e) {
        data_error(file.string() + ": parse error at line " + std::to_string(line) +
                   ": bad number '" + std::string(token) + "'");
    }
    return value;
}

std::vector<BBox> parse_box_lines(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) data_error(file.string() + ": cannot open");
    std::vector<BBox> boxes;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() ||
            std::all_of(line.begin(), line.end(),
                        [](unsigned char c) { return std::isspace(c); })) {
            continue;
        }
        std::vector<std::string> tokens;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) tokens.push_back(tok);
        if (tokens.size() != 4) {
            data_error(file.string() + ": parse error at line " + std::to_string(line_no) +
                       ": expected 4 comma-separated values, got " +
                       std::to_string(tokens.size()));
        }
        const double x = parse_number(tokens[0], file, line_no);
        const double y = parse_number(tokens[1], file, line_no);
        const double w = parse_number(tokens[2], file, line_no);
        const double h = parse_number(tokens[3], file, line_no);
        boxes.push_back(BBox::from_corner(x, y, w, h));
    }
    return boxes;
}

void format_number(std::string& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

}  // namespace

SequenceSource load_sequence(const std::filesystem::path& path) {
    if (!std::filesystem::is_directory(path)) {
        data_error(path.string() + ": sequence directory does not exist");
    }
    SequenceSource src;
    src.dir = path;
    src.name = path.filename().string();

    std::vector<std::pair<long long, std::filesystem::path>> numbered;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (ext != ".pgm" && ext != ".ppm") continue;
        long long key = 0;
        if (!numeric_stem_value(entry.path(), key)) key = 0;
        numbered.emplace_back(key, entry.path());
    }
    std::sort(numbered.begin(), numbered.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second.string() < b.second.string();
    });
    for (auto& [key, p] : numbered) src.frame_paths.push_back(p);
    if (src.frame_paths.empty()) {
        data_error(path.string() + ": no image frames (.pgm/.ppm) found");
    }

    for (const char* name : {"groundtruth.txt", "groundtruth_rect.txt"}) {
        const auto gt_path = path / name;
        if (std::filesystem::exists(gt_path)) {
            src.ground_truth = parse_box_lines(gt_path);
            break;
        }
    }
    if (src.has_ground_truth() &&
        src.ground_truth.size() != src.frame_paths.size()) {
        data_error(path.string() + ": frame count (" + std::to_string(src.frame_paths.size()) +
                   ") does not match ground-truth line count (" +
                   std::to_string(src.ground_truth.size()) + ")");
    }
    return src;
}

double iou(const BBox& a, const BBox& b) {
    require_valid(a, "bench::iou");
    require_valid(b, "bench::iou");
    const double ix = std::max(0.0, std::min(a.x1(), b.x1()) - std::max(a.x0(), b.x0()));
    const double iy = std::max(0.0, std::min(a.y1(), b.y1()) - std::max(a.y0(), b.y0()));
    const double inter = ix * iy;
    if (inter <= 0.0) return 0.0;
    return inter / (a.area() + b.area() - inter);
}

std::vector<double> success_curve(const std::vector<double>& ious) {
    std::vector<double> curve(51, 0.0);
    if (ious.empty()) return curve;
    for (int i = 0; i <= 50; ++i) {
        const double t = i / 50.0;
        int above = 0;
        for (double v : ious) {
            if (v >= t) ++above;
        }
        curve[i] = static_cast<double>(above) / ious.size();
    }
    return curve;
}

double success_auc(const std::vector<double>& curve) {
    if (curve.empty()) return 0.0;
    double s = 0.0;
    for (double v : curve) s += v;
    return s / curve.size();
}

EvalReport make_report(const std::vector<BBox>& predictions, const std::vector<BBox>& gt,
                       double mean_fps) {
    if (predictions.size() != gt.size()) {
        throw std::invalid_argument("bench::make_report: list sizes must match");
    }
    EvalReport r;
    r.mean_fps = mean_fps;
    r.per_frame_iou.reserve(predictions.size());
    int close = 0;
    double iou_sum = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double v = iou(predictions[i], gt[i]);
        r.per_frame_iou.push_back(v);
        iou_sum += v;
        const double dist = std::hypot(predictions[i].cx - gt[i].cx,
                                       predictions[i].cy - gt[i].cy);
        if (dist <= 20.0) ++close;
    }
    r.success_curve = success_curve(r.per_frame_iou);
    r.success_auc = success_auc(r.success_curve);
    r.precision_20px = predictions.empty() ? 0.0
                                           : static_cast<double>(close) / predictions.size();
    r.mean_iou = predictions.empty() ? 0.0 : iou_sum / predictions.size();
    return r;
}

namespace {

std::vector<Frame> load_frames(const SequenceSource& source) {
    std::vector<Frame> frames;
    frames.reserve(source.frame_paths.size());
    for (const auto& p : source.frame_paths) frames.push_back(io::read_image(p));
    return frames;
}

}  // namespace

EvalReport evaluate(const tracker::TrackerConfig& cfg, const SequenceSource& source,
                    EvalMode mode, const ResetProtocol& protocol) {
    if (!source.has_ground_truth()) {
        data_error(source.dir.string() + ": evaluation requires ground truth");
    }
    const std::vector<Frame> frames = load_frames(source);
    const std::vector<BBox>& gt = source.ground_truth;
    const int n = static_cast<int>(frames.size());

    using clock = std::chrono::steady_clock;
    double seconds = 0.0;
    int stepped = 0;

    if (mode == EvalMode::OnePass) {
        std::vector<BBox> pred;
        pred.reserve(n);
        try {
            tracker::TrackerState state = tracker::init(frames[0], gt[0], cfg);
            pred.push_back(gt[0]);
            for (int t = 1; t < n; ++t) {
                const auto t0 = clock::now();
                auto res = tracker::step(state, frames[t]);
                seconds += std::chrono::duration<double>(clock::now() - t0).count();
                ++stepped;
                state = std::move(res.state);
                pred.push_back(res.box);
            }
        } catch (const std::exception& e) {
            data_error(source.dir.string() + ": tracker failed: " + e.what());
        }
        EvalReport r = make_report(pred, gt, stepped > 0 ? stepped / seconds : 0.0);
        return r;
    }

    // Reset protocol.
    EvalReport r;
    std::vector<double> counted;
    int failures = 0;
    int t = 0;
    try {
        while (t < n) {
            tracker::TrackerState state = tracker::init(frames[t], gt[t], cfg);
            const int init_frame = t;
            bool failed = false;
            ++t;
            for (; t < n; ++t) {
                const auto t0 = clock::now();
                auto res = tracker::step(state, frames[t]);
                seconds += std::chrono::duration<double>(clock::now() - t0).count();
                ++stepped;
                state = std::move(res.state);
                const double v = iou(res.box, gt[t]);
                if (v == 0.0) {
                    ++failures;
                    failed = true;
                    break;
                }
                if (t - init_frame > protocol.burn_in) counted.push_back(v);
            }
            if (failed) {
                t += protocol.reinit_gap;  // skip ahead, then re-initialize from ground truth
            }
        }
    } catch (const std::exception& e) {
        data_error(source.dir.string() + ": tracker failed: " + e.what());
    }
    r.per_frame_iou = counted;
    r.success_curve = success_curve(counted);
    r.success_auc = success_auc(r.success_curve);
    r.failure_count = failures;
    double sum = 0.0;
    for (double v : counted) sum += v;
    r.mean_iou = counted.empty() ? 0.0 : sum / counted.size();
    r.mean_fps = stepped > 0 ? stepped / seconds : 0.0;
    return r;
}

void save_results(const std::vector<BBox>& boxes, const std::filesystem::path& path) {
    std::string text;
    for (const BBox& b : boxes) {
        format_number(text, b.x0());
        text.push_back(',');
        format_number(text, b.y0());
        text.push_back(',');
        format_number(text, b.w);
        text.push_back(',');
        format_number(text, b.h);
        text.push_back('\n');
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) data_error(path.string() + ": cannot open for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) data_error(path.string() + ": write failed");
}

std::vector<BBox> load_results(const std::filesystem::path& path) { return parse_box_lines(path); }

}  // namespace gsctrack::bench
