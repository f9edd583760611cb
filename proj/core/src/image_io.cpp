#include "gsctrack/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace gsctrack::io {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& why) {
    throw std::runtime_error("image_io: " + path.string() + ": " + why);
}

// Reads the next whitespace/comment-delimited token of a PNM header.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

}  // namespace

Frame read_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    const std::string magic = next_token(in);
    int channels = 0;
    if (magic == "P5") {
        channels = 1;
    } else if (magic == "P6") {
        channels = 3;
    } else {
        fail(path, "unsupported format (expected binary PGM/PPM)");
    }
    const std::string ws = next_token(in), hs = next_token(in), ms = next_token(in);
    int width = 0, height = 0, maxval = 0;
    try {
        width = std::stoi(ws);
        height = std::stoi(hs);
        maxval = std::stoi(ms);
    } catch (const std::exception&) {
        fail(path, "malformed header");
    }
    if (width < 1 || height < 1 || maxval < 1 || maxval > 255) {
        fail(path, "unsupported dimensions or maxval");
    }
    const std::size_t count = static_cast<std::size_t>(width) * height * channels;
    std::vector<std::uint8_t> raw(count);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count) fail(path, "truncated pixel data");

    Frame f = Frame::zeros(width, height, channels);
    const double scale = 1.0 / maxval;
    for (std::size_t i = 0; i < count; ++i) f.pixels[i] = raw[i] * scale;
    return f;
}

void write_image(const Frame& frame, const std::filesystem::path& path) {
    if (frame.channels != 1 && frame.channels != 3) {
        throw std::invalid_argument("image_io: only 1- or 3-channel frames are supported");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << (frame.channels == 1 ? "P5" : "P6") << "\n"
        << frame.width << " " << frame.height << "\n255\n";
    std::vector<std::uint8_t> raw(frame.pixels.size());
    for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
        const double v = std::clamp(frame.pixels[i], 0.0, 1.0);
        raw[i] = static_cast<std::uint8_t>(std::lround(v * 255.0));
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) fail(path, "write failed");
}

namespace {
constexpr char kCorrMagic[4] = {'G', 'S', 'C', 'F'};
}

CorrespondenceField read_correspondence(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kCorrMagic, 4) != 0) fail(path, "bad magic");
    std::int32_t h = 0, w = 0;
    in.read(reinterpret_cast<char*>(&h), 4);
    in.read(reinterpret_cast<char*>(&w), 4);
    if (!in || h < 1 || w < 1) fail(path, "bad dimensions");
    CorrespondenceField f = CorrespondenceField::zeros(h, w);
    const std::streamsize bytes = static_cast<std::streamsize>(f.ys.size()) * 8;
    in.read(reinterpret_cast<char*>(f.ys.data()), bytes);
    in.read(reinterpret_cast<char*>(f.xs.data()), bytes);
    if (!in) fail(path, "truncated data");
    return f;
}

void write_correspondence(const CorrespondenceField& field, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out.write(kCorrMagic, 4);
    const std::int32_t h = field.h, w = field.w;
    out.write(reinterpret_cast<const char*>(&h), 4);
    out.write(reinterpret_cast<const char*>(&w), 4);
    const std::streamsize bytes = static_cast<std::streamsize>(field.ys.size()) * 8;
    out.write(reinterpret_cast<const char*>(field.ys.data()), bytes);
    out.write(reinterpret_cast<const char*>(field.xs.data()), bytes);
    if (!out) fail(path, "write failed");
}

}  // namespace gsctrack::io
