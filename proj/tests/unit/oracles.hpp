#pragma once

// Independent reference implementations used to check the library. These are
// deliberately naive (scalar loops, dense linear algebra) and must stay
// decoupled from the implementation paths they verify.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "gsctrack/types.hpp"

namespace oracle {

using gsctrack::BBox;
using gsctrack::BinaryMask;
using gsctrack::CorrespondenceField;
using gsctrack::FeatureMap;
using gsctrack::Frame;
using gsctrack::ResponseMap;

/// Scalar-loop Gaussian grid.
inline ResponseMap gaussian(double cy, double cx, double sigma, int h, int w) {
    ResponseMap out = ResponseMap::zeros(h, w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double d2 = (y - cy) * (y - cy) + (x - cx) * (x - cx);
            out.at(y, x) = std::exp(-d2 / (2.0 * sigma * sigma));
        }
    }
    return out;
}

/// Four-neighbor weighted sum with zero padding.
inline double bilinear(const ResponseMap& g, double y, double x) {
    const int y0 = static_cast<int>(std::floor(y));
    const int x0 = static_cast<int>(std::floor(x));
    const double fy = y - y0, fx = x - x0;
    double acc = 0.0;
    const double weights[4] = {(1 - fy) * (1 - fx), (1 - fy) * fx, fy * (1 - fx), fy * fx};
    const int offs[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (int k = 0; k < 4; ++k) {
        const int yy = y0 + offs[k][0], xx = x0 + offs[k][1];
        if (yy < 0 || yy >= g.h || xx < 0 || xx >= g.w) continue;
        acc += weights[k] * g.at(yy, xx);
    }
    return acc;
}

/// Triple-loop all-pairs correlation: dot of every x_b cell with every x_a cell.
inline std::vector<double> correlation_volume(const FeatureMap& x_a, const FeatureMap& x_b) {
    const int hw = x_a.h * x_a.w;
    std::vector<double> scores(static_cast<std::size_t>(hw) * hw, 0.0);
    for (int yb = 0; yb < x_b.h; ++yb) {
        for (int xb = 0; xb < x_b.w; ++xb) {
            for (int i = 0; i < hw; ++i) {
                const int ya = i / x_a.w, xa = i % x_a.w;
                double dot = 0.0;
                for (int ch = 0; ch < x_a.c; ++ch) {
                    dot += x_b.at(yb, xb, ch) * x_a.at(ya, xa, ch);
                }
                scores[(static_cast<std::size_t>(yb) * x_b.w + xb) * hw + i] = dot;
            }
        }
    }
    return scores;
}

/// Per-cell bilinear warp of each channel (zero padding).
inline FeatureMap warp(const FeatureMap& x, const CorrespondenceField& c) {
    FeatureMap out = FeatureMap::zeros(x.h, x.w, x.c, x.stride);
    for (int y = 0; y < x.h; ++y) {
        for (int xx = 0; xx < x.w; ++xx) {
            const double sy = c.y_at(y, xx), sx = c.x_at(y, xx);
            const int y0 = static_cast<int>(std::floor(sy));
            const int x0 = static_cast<int>(std::floor(sx));
            const double fy = sy - y0, fx = sx - x0;
            const double weights[4] = {(1 - fy) * (1 - fx), (1 - fy) * fx, fy * (1 - fx),
                                       fy * fx};
            const int offs[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
            for (int k = 0; k < 4; ++k) {
                const int yy = y0 + offs[k][0], xc = x0 + offs[k][1];
                if (yy < 0 || yy >= x.h || xc < 0 || xc >= x.w) continue;
                for (int ch = 0; ch < x.c; ++ch) {
                    out.at(y, xx, ch) += weights[k] * x.at(yy, xc, ch);
                }
            }
        }
    }
    return out;
}

/// Neighborhood-scan local-max mask (k x k centered window, edge truncated).
inline BinaryMask local_max_scan(const ResponseMap& r, int k) {
    const int lo = (k - 1) / 2, hi = k / 2;
    BinaryMask mask = BinaryMask::zeros(r.h, r.w);
    for (int y = 0; y < r.h; ++y) {
        for (int x = 0; x < r.w; ++x) {
            double best = -1e300;
            for (int yy = std::max(0, y - lo); yy <= std::min(r.h - 1, y + hi); ++yy) {
                for (int xx = std::max(0, x - lo); xx <= std::min(r.w - 1, x + hi); ++xx) {
                    best = std::max(best, r.at(yy, xx));
                }
            }
            mask.at(y, x) = (r.at(y, x) >= best - 1e-9) ? 1 : 0;
        }
    }
    return mask;
}

/// Dense symmetric positive-definite solve (Cholesky), for the ridge oracle.
inline std::vector<double> cholesky_solve(std::vector<double> a, std::vector<double> b, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = a[static_cast<std::size_t>(i) * n + j];
            for (int k = 0; k < j; ++k) {
                sum -= a[static_cast<std::size_t>(i) * n + k] * a[static_cast<std::size_t>(j) * n + k];
            }
            if (i == j) {
                if (sum <= 0.0) throw std::runtime_error("cholesky: matrix not positive definite");
                a[static_cast<std::size_t>(i) * n + j] = std::sqrt(sum);
            } else {
                a[static_cast<std::size_t>(i) * n + j] = sum / a[static_cast<std::size_t>(j) * n + j];
            }
        }
    }
    // Forward then backward substitution.
    for (int i = 0; i < n; ++i) {
        double sum = b[i];
        for (int k = 0; k < i; ++k) sum -= a[static_cast<std::size_t>(i) * n + k] * b[k];
        b[i] = sum / a[static_cast<std::size_t>(i) * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double sum = b[i];
        for (int k = i + 1; k < n; ++k) sum -= a[static_cast<std::size_t>(k) * n + i] * b[k];
        b[i] = sum / a[static_cast<std::size_t>(i) * n + i];
    }
    return b;
}

/// 2D circular convolution (z conv a), scalar loops.
inline std::vector<double> circ_convolve(const std::vector<double>& z,
                                         const std::vector<double>& a, int h, int w) {
    std::vector<double> r(static_cast<std::size_t>(h) * w, 0.0);
    for (int uy = 0; uy < h; ++uy) {
        for (int ux = 0; ux < w; ++ux) {
            double acc = 0.0;
            for (int vy = 0; vy < h; ++vy) {
                for (int vx = 0; vx < w; ++vx) {
                    const int zy = ((uy - vy) % h + h) % h;
                    const int zx = ((ux - vx) % w + w) % w;
                    acc += z[static_cast<std::size_t>(zy) * w + zx] *
                           a[static_cast<std::size_t>(vy) * w + vx];
                }
            }
            r[static_cast<std::size_t>(uy) * w + ux] = acc;
        }
    }
    return r;
}

/// Dense ridge regression for the single-channel circular filter problem:
/// minimize sum_j weight_j * ||z_j conv a - y_j||^2 + lambda ||a||^2 over the
/// spatial filter a, via explicit circulant matrices and normal equations.
inline std::vector<double> dense_ridge_filter(const std::vector<std::vector<double>>& samples,
                                              const std::vector<std::vector<double>>& labels,
                                              const std::vector<double>& weights, int h, int w,
                                              double lambda) {
    const int n = h * w;
    std::vector<double> normal(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> rhs(n, 0.0);
    for (std::size_t j = 0; j < samples.size(); ++j) {
        // M[u][v] = z[(u - v) mod], column v is z shifted by v.
        std::vector<double> m(static_cast<std::size_t>(n) * n);
        for (int uy = 0; uy < h; ++uy) {
            for (int ux = 0; ux < w; ++ux) {
                const int u = uy * w + ux;
                for (int vy = 0; vy < h; ++vy) {
                    for (int vx = 0; vx < w; ++vx) {
                        const int v = vy * w + vx;
                        const int zy = ((uy - vy) % h + h) % h;
                        const int zx = ((ux - vx) % w + w) % w;
                        m[static_cast<std::size_t>(u) * n + v] =
                            samples[j][static_cast<std::size_t>(zy) * w + zx];
                    }
                }
            }
        }
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b <= a; ++b) {
                double acc = 0.0;
                for (int u = 0; u < n; ++u) {
                    acc += m[static_cast<std::size_t>(u) * n + a] *
                           m[static_cast<std::size_t>(u) * n + b];
                }
                normal[static_cast<std::size_t>(a) * n + b] += weights[j] * acc;
                if (a != b) normal[static_cast<std::size_t>(b) * n + a] += weights[j] * acc;
            }
            double acc = 0.0;
            for (int u = 0; u < n; ++u) {
                acc += m[static_cast<std::size_t>(u) * n + a] * labels[j][u];
            }
            rhs[a] += weights[j] * acc;
        }
    }
    for (int i = 0; i < n; ++i) normal[static_cast<std::size_t>(i) * n + i] += lambda;
    return cholesky_solve(std::move(normal), std::move(rhs), n);
}

/// Deterministic uniform values in [lo, hi).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (gen_() >> 11) * (1.0 / 9007199254740992.0);
    }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 gen_;
};

inline ResponseMap random_map(Rng& rng, int h, int w, double lo = -1.0, double hi = 1.0) {
    ResponseMap r = ResponseMap::zeros(h, w);
    for (double& v : r.v) v = rng.uniform(lo, hi);
    return r;
}

inline FeatureMap random_features(Rng& rng, int h, int w, int c, bool normalize = true,
                                  int stride = 1) {
    FeatureMap f = FeatureMap::zeros(h, w, c, stride);
    for (double& v : f.data) v = rng.uniform(-1.0, 1.0);
    if (normalize) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                double* cell = f.cell(y, x);
                double norm = 0.0;
                for (int ch = 0; ch < c; ++ch) norm += cell[ch] * cell[ch];
                norm = std::sqrt(norm);
                if (norm > 0.0) {
                    for (int ch = 0; ch < c; ++ch) cell[ch] /= norm;
                }
            }
        }
        f.normalized = true;
    }
    return f;
}

/// Feature map whose cell vectors are mutually orthonormal basis vectors
/// (requires c >= h * w).
inline FeatureMap orthonormal_features(int h, int w, int c) {
    if (c < h * w) throw std::invalid_argument("orthonormal_features: need c >= h*w");
    FeatureMap f = FeatureMap::zeros(h, w, c, 1);
    f.normalized = true;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) f.at(y, x, y * w + x) = 1.0;
    }
    return f;
}

/// Circular shift of the cell grid: out(y, x) = in((y - dy) mod, (x - dx) mod).
inline FeatureMap circular_shift(const FeatureMap& in, int dy, int dx) {
    FeatureMap out = FeatureMap::zeros(in.h, in.w, in.c, in.stride);
    out.normalized = in.normalized;
    for (int y = 0; y < in.h; ++y) {
        for (int x = 0; x < in.w; ++x) {
            const int sy = ((y - dy) % in.h + in.h) % in.h;
            const int sx = ((x - dx) % in.w + in.w) % in.w;
            for (int ch = 0; ch < in.c; ++ch) out.at(y, x, ch) = in.at(sy, sx, ch);
        }
    }
    return out;
}

}  // namespace oracle
