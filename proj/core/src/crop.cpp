#include "gsctrack/crop.hpp"

#include <cmath>

namespace gsctrack {

CropTransform make_crop_transform(Point center, double side_px, int crop_size) {
    if (!(side_px > 0.0) || crop_size < 1) {
        throw std::invalid_argument("make_crop_transform: side and crop_size must be positive");
    }
    CropTransform t;
    t.cy = center.y;
    t.cx = center.x;
    t.scale = side_px / crop_size;
    t.crop_size = crop_size;
    return t;
}

namespace {

inline double sample_frame(const Frame& f, double y, double x, int c) {
    const double fy = std::floor(y);
    const double fx = std::floor(x);
    const int y0 = static_cast<int>(fy), x0 = static_cast<int>(fx);
    const double wy = y - fy, wx = x - fx;
    auto value = [&](int yy, int xx) -> double {
        if (yy < 0 || yy >= f.height || xx < 0 || xx >= f.width) return 0.0;
        return f.at(yy, xx, c);
    };
    return (1 - wy) * ((1 - wx) * value(y0, x0) + wx * value(y0, x0 + 1)) +
           wy * ((1 - wx) * value(y0 + 1, x0) + wx * value(y0 + 1, x0 + 1));
}

}  // namespace

Frame crop_resample(const Frame& frame, const CropTransform& t) {
    Frame out = Frame::zeros(t.crop_size, t.crop_size, frame.channels);
    for (int v = 0; v < t.crop_size; ++v) {
        for (int u = 0; u < t.crop_size; ++u) {
            const Point p = t.to_frame({static_cast<double>(v), static_cast<double>(u)});
            for (int c = 0; c < frame.channels; ++c) {
                out.at(v, u, c) = sample_frame(frame, p.y, p.x, c);
            }
        }
    }
    return out;
}

}  // namespace gsctrack
