#include "rct/features.hpp"

#include <cmath>

#include "rct/errors.hpp"

namespace rct {

FeatureMap fuse(const Frame& frame, int cell_size) {
    HsvImage hsv = rgb_to_hsv(frame);
    for (double& v : hsv.h.values) v /= 360.0;

    const FeatureMap fh = extract_hog(hsv.h, cell_size);
    const FeatureMap fs = extract_hog(hsv.s, cell_size);
    const FeatureMap fv = extract_hog(hsv.v, cell_size);

    FeatureMap fused(fh.rows, fh.cols, kFusedChannels);
    const std::size_t plane = static_cast<std::size_t>(fh.rows) * fh.cols * kHogChannels;
    std::copy(fh.data.begin(), fh.data.end(), fused.data.begin());
    std::copy(fs.data.begin(), fs.data.end(), fused.data.begin() + plane);
    std::copy(fv.data.begin(), fv.data.end(), fused.data.begin() + 2 * plane);
    return fused;
}

Grid make_cosine_window(int rows, int cols) {
    if (rows < 1 || cols < 1) throw SizeError("make_cosine_window: empty grid");
    const auto hann = [](int i, int n) {
        if (n == 1) return 1.0;
        return 0.5 * (1.0 - std::cos(2.0 * M_PI * i / (n - 1)));
    };
    Grid win(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const double wr = hann(r, rows);
        for (int c = 0; c < cols; ++c) win.at(r, c) = wr * hann(c, cols);
    }
    return win;
}

FeatureMap apply_window(const FeatureMap& features, const Grid& window) {
    if (features.rows != window.rows || features.cols != window.cols)
        throw SizeError("apply_window: window dims do not match feature grid");
    FeatureMap out = features;
    for (int k = 0; k < out.channels; ++k) {
        double* ch = out.channel(k);
        for (std::size_t i = 0; i < window.size(); ++i) ch[i] *= window.values[i];
    }
    return out;
}

}  // namespace rct
