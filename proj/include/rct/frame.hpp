#pragma once

#include <cstdint>
#include <vector>

#include "rct/grid.hpp"

namespace rct {

/// Decoded 8-bit color image, row-major interleaved RGB.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // width * height * 3

    Frame() = default;
    Frame(int w, int h)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

    std::uint8_t at(int x, int y, int c) const {
        return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    std::uint8_t& at(int x, int y, int c) {
        return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }

    bool valid() const {
        return width > 0 && height > 0 &&
               pixels.size() == static_cast<std::size_t>(width) * height * 3;
    }
};

/// Extract a w*h sub-image centered at (cx, cy); out-of-frame samples
/// replicate the nearest edge pixel.
Frame crop_window(const Frame& frame, double cx, double cy, int w, int h);

/// Bilinear resize to the exact target size. Same-size input is copied
/// unchanged.
Frame resize(const Frame& frame, int out_w, int out_h);

}  // namespace rct
