#pragma once

#include "rct/grid.hpp"

namespace rct {

inline constexpr int kHogOrientations = 18;   // contrast-sensitive bins, full circle
inline constexpr int kHogInsensitive = 9;     // folded half-circle bins
inline constexpr int kHogChannels = 31;       // 18 + 9 + 4 texture channels
inline constexpr double kHogTruncation = 0.2;

/// 31-channel HOG of a real-valued plane: per-cell orientation histograms
/// with bilinear interpolation into both cells and orientation bins, then
/// 2x2 block normalization with truncation.
///
/// Channel layout: [0,18) contrast-sensitive, [18,27) contrast-insensitive,
/// [27,31) texture energy, one per normalization block.
FeatureMap extract_hog(const Grid& plane, int cell_size);

}  // namespace rct
