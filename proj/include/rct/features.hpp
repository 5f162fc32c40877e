#pragma once

#include "rct/frame.hpp"
#include "rct/grid.hpp"
#include "rct/hsv.hpp"
#include "rct/hog.hpp"

namespace rct {

inline constexpr int kFusedChannels = 3 * kHogChannels;  // 93

/// The fused descriptor: HOG extracted independently from the H, S and V
/// planes and concatenated in that order. The H plane is rescaled to [0, 1]
/// so all three planes share a dynamic range.
FeatureMap fuse(const Frame& frame, int cell_size);

/// Separable raised-cosine (Hann) taper; boundary weights are 0 for any
/// dimension >= 2, a single cell gets weight 1.
Grid make_cosine_window(int rows, int cols);

/// Pointwise per-channel multiplication by the window weights.
FeatureMap apply_window(const FeatureMap& features, const Grid& window);

}  // namespace rct
