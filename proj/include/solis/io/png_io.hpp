#pragma once

#include <filesystem>

#include "solis/core/image.hpp"

namespace solis {

// 8-bit RGB PNG, non-interlaced, fixed zlib settings so identical pixels
// produce identical files.
void write_png(const std::filesystem::path& path, const ImageRGB& img);

// Reads any libpng-supported PNG; grayscale/palette/alpha inputs are
// expanded or stripped to 8-bit RGB.
ImageRGB read_png(const std::filesystem::path& path);

}  // namespace solis
