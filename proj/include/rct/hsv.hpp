#pragma once

#include "rct/frame.hpp"
#include "rct/grid.hpp"

namespace rct {

/// Hexcone HSV planes of an RGB frame. H in [0, 360), S and V in [0, 1].
/// H is stored as 0 where S = 0 (hue undefined).
struct HsvImage {
    int width = 0;
    int height = 0;
    Grid h;  // rows = height, cols = width
    Grid s;
    Grid v;
};

HsvImage rgb_to_hsv(const Frame& frame);

}  // namespace rct
