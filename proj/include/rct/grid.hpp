#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <vector>

namespace rct {

/// Dense row-major grid of doubles. Used for image planes, response maps,
/// labels and window weights.
struct Grid {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;

    Grid() = default;
    Grid(int r, int c, double fill = 0.0)
        : rows(r), cols(c), values(static_cast<std::size_t>(r) * c, fill) {}

    double& at(int r, int c) {
        assert(r >= 0 && r < rows && c >= 0 && c < cols);
        return values[static_cast<std::size_t>(r) * cols + c];
    }
    double at(int r, int c) const {
        assert(r >= 0 && r < rows && c >= 0 && c < cols);
        return values[static_cast<std::size_t>(r) * cols + c];
    }

    std::size_t size() const { return values.size(); }
    bool same_shape(const Grid& o) const { return rows == o.rows && cols == o.cols; }
};

/// Multi-channel cell grid; one contiguous rows*cols plane per channel.
struct FeatureMap {
    int rows = 0;
    int cols = 0;
    int channels = 0;
    std::vector<double> data;

    FeatureMap() = default;
    FeatureMap(int r, int c, int k)
        : rows(r), cols(c), channels(k),
          data(static_cast<std::size_t>(r) * c * k, 0.0) {}

    double& at(int r, int c, int k) {
        assert(r >= 0 && r < rows && c >= 0 && c < cols && k >= 0 && k < channels);
        return data[(static_cast<std::size_t>(k) * rows + r) * cols + c];
    }
    double at(int r, int c, int k) const {
        assert(r >= 0 && r < rows && c >= 0 && c < cols && k >= 0 && k < channels);
        return data[(static_cast<std::size_t>(k) * rows + r) * cols + c];
    }

    double* channel(int k) { return data.data() + static_cast<std::size_t>(k) * rows * cols; }
    const double* channel(int k) const {
        return data.data() + static_cast<std::size_t>(k) * rows * cols;
    }

    /// Copy one channel out as a Grid.
    Grid channel_grid(int k) const {
        Grid g(rows, cols);
        const double* src = channel(k);
        std::copy(src, src + g.size(), g.values.begin());
        return g;
    }
};

}  // namespace rct
