#pragma once

#include <filesystem>

#include "rct/frame.hpp"
#include "rct/grid.hpp"

namespace rct {

/// Decode a JPEG or PNG file (sniffed by magic bytes) into an 8-bit RGB
/// frame. Grayscale sources are replicated across the three channels.
Frame load_image(const std::filesystem::path& path);

/// Write an RGB frame as a PNG file.
void save_png(const std::filesystem::path& path, const Frame& frame);

/// Write a grid as an 8-bit grayscale PNG, affinely mapping [min, max]
/// onto [0, 255]. Constant grids come out black.
void save_png_gray(const std::filesystem::path& path, const Grid& grid);

}  // namespace rct
