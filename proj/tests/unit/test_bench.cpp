#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gsctrack/bench.hpp"
#include "gsctrack/image_io.hpp"
#include "gsctrack/synth.hpp"
#include "oracles.hpp"

using namespace gsctrack;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("gsctrack_test_" + std::to_string(counter()++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

void write_sequence(const fs::path& dir, const synth::SequenceRecord& rec) {
    char name[32];
    for (std::size_t t = 0; t < rec.frames.size(); ++t) {
        std::snprintf(name, sizeof(name), "%06zu.pgm", t + 1);
        io::write_image(rec.frames[t], dir / name);
    }
    bench::save_results(rec.gt_boxes, dir / "groundtruth.txt");
}

}  // namespace

TEST_CASE("iou unit examples") {
    const BBox a = BBox::from_corner(0, 0, 1, 1);
    CHECK(bench::iou(a, a) == 1.0);

    const BBox b = BBox::from_corner(5, 5, 1, 1);
    CHECK(bench::iou(a, b) == 0.0);

    const BBox c = BBox::from_corner(0.5, 0.0, 1, 1);
    CHECK(bench::iou(a, c) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(bench::iou(c, a) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("iou is symmetric and bounded on random boxes") {
    oracle::Rng rng(71);
    for (int i = 0; i < 200; ++i) {
        const BBox a{rng.uniform(0, 100), rng.uniform(0, 100), rng.uniform(1, 50),
                     rng.uniform(1, 50)};
        const BBox b{rng.uniform(0, 100), rng.uniform(0, 100), rng.uniform(1, 50),
                     rng.uniform(1, 50)};
        const double ab = bench::iou(a, b);
        CHECK(ab == bench::iou(b, a));
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
    }
}

TEST_CASE("success curve and AUC on the 3-frame toy match the hand table") {
    const std::vector<double> ious = {1.0, 0.5, 0.0};
    const std::vector<double> curve = bench::success_curve(ious);
    REQUIRE(curve.size() == 51);
    // Hand-computed: threshold 0 counts all three; (0, 0.5] counts two;
    // (0.5, 1.0] counts one.
    CHECK(curve[0] == doctest::Approx(1.0));
    for (int i = 1; i <= 25; ++i) CHECK(curve[i] == doctest::Approx(2.0 / 3.0));
    for (int i = 26; i <= 50; ++i) CHECK(curve[i] == doctest::Approx(1.0 / 3.0));
    CHECK(bench::success_auc(curve) == doctest::Approx(26.0 / 51.0).epsilon(1e-12));

    // The curve is non-increasing in the threshold.
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i] <= curve[i - 1] + 1e-15);
}

TEST_CASE("success curve matches a brute-force per-threshold count on random inputs") {
    oracle::Rng rng(72);
    std::vector<double> ious(37);
    for (double& v : ious) v = rng.uniform(0.0, 1.0);
    const std::vector<double> curve = bench::success_curve(ious);
    for (int i = 0; i <= 50; ++i) {
        int n = 0;
        for (double v : ious) {
            if (v >= i / 50.0) ++n;
        }
        CHECK(curve[i] == doctest::Approx(static_cast<double>(n) / ious.size()));
    }
}

TEST_CASE("perfect predictions give success_auc 1.0 and zero failures") {
    std::vector<BBox> gt;
    for (int i = 0; i < 7; ++i) gt.push_back(BBox::from_corner(10.0 + i, 20.0, 40, 30));
    const bench::EvalReport r = bench::make_report(gt, gt, 100.0);
    CHECK(r.success_auc == doctest::Approx(1.0));
    CHECK(r.precision_20px == doctest::Approx(1.0));
    CHECK(r.mean_iou == doctest::Approx(1.0));
    CHECK(r.failure_count == 0);
}

TEST_CASE("results files round-trip bit-identically") {
    TempDir tmp;
    std::vector<BBox> boxes;
    oracle::Rng rng(73);
    for (int i = 0; i < 20; ++i) {
        boxes.push_back(BBox::from_corner(rng.uniform(0, 300), rng.uniform(0, 200),
                                          rng.uniform(1, 60), rng.uniform(1, 60)));
    }
    const fs::path p1 = tmp.path / "a.txt";
    const fs::path p2 = tmp.path / "b.txt";
    bench::save_results(boxes, p1);
    const std::vector<BBox> loaded = bench::load_results(p1);
    REQUIRE(loaded.size() == boxes.size());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        CHECK(loaded[i].cx == boxes[i].cx);
        CHECK(loaded[i].cy == boxes[i].cy);
        CHECK(loaded[i].w == boxes[i].w);
        CHECK(loaded[i].h == boxes[i].h);
    }
    bench::save_results(loaded, p2);
    std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
    const std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    const std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    CHECK(!s1.empty());
    CHECK(s1.back() == '\n');
}

TEST_CASE("load_sequence: counts, ordering and parse errors") {
    TempDir tmp;
    const synth::SequenceRecord rec = synth::generate(synth::preset("crossing", 3));
    write_sequence(tmp.path, rec);

    const bench::SequenceSource src = bench::load_sequence(tmp.path);
    CHECK(src.size() == static_cast<int>(rec.frames.size()));
    REQUIRE(src.has_ground_truth());
    CHECK(src.ground_truth.size() == rec.gt_boxes.size());
    // Numeric ordering of the frame files.
    for (int i = 1; i < src.size(); ++i) {
        CHECK(src.frame_paths[i - 1].filename().string() <
              src.frame_paths[i].filename().string());
    }

    // Malformed ground truth reports the line number.
    {
        std::ofstream gt(tmp.path / "groundtruth.txt", std::ios::trunc);
        gt << "1,2,3\n";
    }
    try {
        bench::load_sequence(tmp.path);
        FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }

    CHECK_THROWS_AS(bench::load_sequence(tmp.path / "missing"), std::runtime_error);
}

TEST_CASE("load_sequence rejects frame/ground-truth count mismatch") {
    TempDir tmp;
    const synth::SequenceRecord rec = synth::generate(synth::preset("crossing", 4));
    write_sequence(tmp.path, rec);
    std::vector<BBox> short_gt(rec.gt_boxes.begin(), rec.gt_boxes.end() - 2);
    bench::save_results(short_gt, tmp.path / "groundtruth.txt");
    CHECK_THROWS_AS(bench::load_sequence(tmp.path), std::runtime_error);
}

TEST_CASE("pgm round trip preserves quantized pixels") {
    TempDir tmp;
    const synth::SequenceRecord rec = synth::generate(synth::preset("crossing", 6));
    const fs::path p = tmp.path / "f.pgm";
    io::write_image(rec.frames[0], p);
    const Frame back = io::read_image(p);
    CHECK(back.width == rec.frames[0].width);
    CHECK(back.height == rec.frames[0].height);
    CHECK(back.pixels == rec.frames[0].pixels);  // synth frames are 8-bit quantized
}

TEST_CASE("correspondence grid file round trip") {
    TempDir tmp;
    oracle::Rng rng(74);
    CorrespondenceField f = CorrespondenceField::zeros(5, 7);
    for (auto& v : f.ys) v = rng.uniform(-3.0, 9.0);
    for (auto& v : f.xs) v = rng.uniform(-3.0, 9.0);
    const fs::path p = tmp.path / "c.bin";
    io::write_correspondence(f, p);
    const CorrespondenceField back = io::read_correspondence(p);
    CHECK(back.h == 5);
    CHECK(back.w == 7);
    CHECK(back.ys == f.ys);
    CHECK(back.xs == f.xs);
}

TEST_CASE("evaluate (ope) runs a tracker over a written sequence") {
    TempDir tmp;
    synth::ScenarioSpec spec;
    spec.n_frames = 8;
    spec.target.blob.texture_seed = 19;
    spec.target.waypoints = {{0, 140.0, 120.0}, {7, 168.0, 120.0}};
    spec.background_seed = 20;
    const synth::SequenceRecord rec = synth::generate(spec);
    write_sequence(tmp.path, rec);

    const bench::SequenceSource src = bench::load_sequence(tmp.path);
    tracker::TrackerConfig cfg;
    const bench::EvalReport r = bench::evaluate(cfg, src, bench::EvalMode::OnePass);
    CHECK(r.per_frame_iou.size() == 8);
    CHECK(r.mean_iou > 0.5);
    CHECK(r.mean_fps > 0.0);
    CHECK(r.failure_count == 0);
}

TEST_CASE("evaluate (reset) counts failures on a crippled config") {
    TempDir tmp;
    const synth::SequenceRecord rec = synth::generate(synth::preset("occlusion", 21));
    write_sequence(tmp.path, rec);
    const bench::SequenceSource src = bench::load_sequence(tmp.path);

    // Deliberately crippled: a tiny search region cannot reacquire after the
    // occluder blanks the target, so at least one failure must be counted.
    tracker::TrackerConfig cfg;
    cfg.search_area_factor = 1.5;
    cfg.crop_size = 96;
    cfg.ablation.disable_short_term = true;
    const bench::EvalReport r = bench::evaluate(cfg, src, bench::EvalMode::Reset);
    CHECK(r.failure_count >= 1);
}
