#include <doctest.h>

#include <cmath>

#include "gsctrack/grid_ops.hpp"
#include "gsctrack/types.hpp"
#include "oracles.hpp"

using namespace gsctrack;

TEST_CASE("bbox corner/center round trip is exact for pixel-quantized boxes") {
    oracle::Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        // Realistic box data: coordinates quantized to 1/8 pixel.
        const double x = rng.uniform_int(0, 32768) / 8.0;
        const double y = rng.uniform_int(0, 32768) / 8.0;
        const double w = (rng.uniform_int(1, 8192)) / 8.0;
        const double h = (rng.uniform_int(1, 8192)) / 8.0;
        const BBox b = BBox::from_corner(x, y, w, h);
        CHECK(b.x0() == x);
        CHECK(b.y0() == y);
        const BBox b2 = BBox::from_corner(b.x0(), b.y0(), b.w, b.h);
        CHECK(b2.cx == b.cx);
        CHECK(b2.cy == b.cy);
    }
}

TEST_CASE("gaussian_map closed-form values") {
    const ResponseMap g = gaussian_map({2.0, 2.0}, 1.0, 5, 5);
    CHECK(g.at(2, 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.at(2, 3) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(g.at(3, 2) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));

    const ResponseMap g0 = gaussian_map({0.0, 0.0}, 3.7, 4, 4);
    CHECK(g0.at(0, 0) == 1.0);
}

TEST_CASE("gaussian_map matches the scalar-loop oracle on an off-grid center") {
    const ResponseMap g = gaussian_map({1.5, 1.5}, 2.0, 4, 4);
    const ResponseMap ref = oracle::gaussian(1.5, 1.5, 2.0, 4, 4);
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) {
            CHECK(g.at(y, x) == doctest::Approx(ref.at(y, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("gaussian_map rejects non-positive sigma") {
    CHECK_THROWS_AS(gaussian_map({0, 0}, 0.0, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_map({0, 0}, -1.0, 3, 3), std::invalid_argument);
}

TEST_CASE("gaussian_map is reflection symmetric about an on-grid center") {
    const ResponseMap g = gaussian_map({3.0, 3.0}, 1.7, 7, 7);
    for (int dy = -3; dy <= 3; ++dy) {
        for (int dx = -3; dx <= 3; ++dx) {
            CHECK(g.at(3 + dy, 3 + dx) == doctest::Approx(g.at(3 - dy, 3 - dx)).epsilon(1e-15));
        }
    }
}

TEST_CASE("bilinear_sample hits grid values at integer coordinates") {
    oracle::Rng rng(7);
    const ResponseMap g = oracle::random_map(rng, 6, 5);
    for (int y = 0; y < 6; ++y) {
        for (int x = 0; x < 5; ++x) {
            CHECK(bilinear_sample(g, double(y), double(x)) == g.at(y, x));
        }
    }
}

TEST_CASE("bilinear_sample zero-pads outside the grid") {
    oracle::Rng rng(8);
    const ResponseMap g = oracle::random_map(rng, 4, 4);
    CHECK(bilinear_sample(g, -5.0, 2.0) == 0.0);
    CHECK(bilinear_sample(g, 2.0, 17.5) == 0.0);
    CHECK(bilinear_sample(g, -1.5, -1.5) == 0.0);
}

TEST_CASE("bilinear_sample matches the 4-neighbor weighted-sum oracle") {
    oracle::Rng rng(9);
    const ResponseMap g = oracle::random_map(rng, 8, 8);
    for (int i = 0; i < 100; ++i) {
        const double y = rng.uniform(-2.0, 9.5);
        const double x = rng.uniform(-2.0, 9.5);
        CHECK(bilinear_sample(g, y, x) == doctest::Approx(oracle::bilinear(g, y, x)).epsilon(1e-12));
    }
}

TEST_CASE("bilinear_sample rejects non-finite coordinates") {
    const ResponseMap g = ResponseMap::zeros(3, 3);
    CHECK_THROWS_AS(bilinear_sample(g, std::nan(""), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(bilinear_sample(g, 0.0, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
}

TEST_CASE("bilinear_sample is linear in the grid values") {
    oracle::Rng rng(10);
    const ResponseMap a = oracle::random_map(rng, 6, 6);
    const ResponseMap b = oracle::random_map(rng, 6, 6);
    const double alpha = 0.7, beta = -1.3;
    ResponseMap mix = ResponseMap::zeros(6, 6);
    for (std::size_t i = 0; i < mix.v.size(); ++i) mix.v[i] = alpha * a.v[i] + beta * b.v[i];
    for (int i = 0; i < 50; ++i) {
        const double y = rng.uniform(-1.0, 7.0), x = rng.uniform(-1.0, 7.0);
        const double lhs = bilinear_sample(mix, y, x);
        const double rhs = alpha * bilinear_sample(a, y, x) + beta * bilinear_sample(b, y, x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("upsample_field identity when target equals source dims") {
    oracle::Rng rng(11);
    ConfidenceMap f = ConfidenceMap::zeros(4, 5);
    for (double& v : f.v) v = rng.uniform(0.0, 1.0);
    const ConfidenceMap out = upsample_field(f, 4, 5);
    CHECK(out.v == f.v);
}

TEST_CASE("upsample_field keeps constant fields constant and scales coordinates") {
    ConfidenceMap f = ConfidenceMap::zeros(3, 3);
    for (double& v : f.v) v = 0.42;
    const ConfidenceMap up = upsample_field(f, 9, 6);
    for (double v : up.v) CHECK(v == doctest::Approx(0.42).epsilon(1e-15));

    CorrespondenceField c = CorrespondenceField::zeros(3, 3);
    for (int y = 0; y < 3; ++y) {
        for (int x = 0; x < 3; ++x) {
            c.y_at(y, x) = 1.0;
            c.x_at(y, x) = 2.0;
        }
    }
    const CorrespondenceField cu = upsample_field(c, 6, 9);
    for (int y = 0; y < 6; ++y) {
        for (int x = 0; x < 9; ++x) {
            CHECK(cu.y_at(y, x) == doctest::Approx(1.0 * 6 / 3).epsilon(1e-12));
            CHECK(cu.x_at(y, x) == doctest::Approx(2.0 * 9 / 3).epsilon(1e-12));
        }
    }
}

TEST_CASE("upsample_field 4x4 to 8x8 matches the analytic ramp formula") {
    // Linear ramp f(y, x) = 3 + 2x - y; center-aligned resize with edge
    // clamping reproduces the ramp at the clamped source coordinates.
    ConfidenceMap f = ConfidenceMap::zeros(4, 4);
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) f.at(y, x) = 3.0 + 2.0 * x - 1.0 * y;
    }
    const ConfidenceMap up = upsample_field(f, 8, 8);
    auto src = [](int d) { return std::clamp((d + 0.5) * 0.5 - 0.5, 0.0, 3.0); };
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
            const double expect = 3.0 + 2.0 * src(x) - 1.0 * src(y);
            CHECK(up.at(y, x) == doctest::Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("upsample_field rejects shrinking") {
    const ConfidenceMap f = ConfidenceMap::zeros(4, 4);
    CHECK_THROWS_AS(upsample_field(f, 3, 4), std::invalid_argument);
    CHECK_THROWS_AS(upsample_field(f, 4, 2), std::invalid_argument);
}
