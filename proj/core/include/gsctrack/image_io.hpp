#pragma once

#include <filesystem>
#include <string>

#include "gsctrack/types.hpp"

namespace gsctrack::io {

/// Reads a binary PGM (P5) or PPM (P6) image into a Frame with pixels scaled
/// to [0, 1]. Throws std::runtime_error on malformed files.
Frame read_image(const std::filesystem::path& path);

/// Writes a Frame as binary PGM (1 channel) or PPM (3 channels), quantizing
/// pixel values to 8 bits.
void write_image(const Frame& frame, const std::filesystem::path& path);

/// Dense correspondence grid, little-endian binary: magic "GSCF", int32 h and
/// w, then h*w float64 y-coordinates followed by h*w float64 x-coordinates.
CorrespondenceField read_correspondence(const std::filesystem::path& path);
void write_correspondence(const CorrespondenceField& field, const std::filesystem::path& path);

}  // namespace gsctrack::io
