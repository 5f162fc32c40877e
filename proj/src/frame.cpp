#include "rct/frame.hpp"

#include <algorithm>
#include <cmath>

#include "rct/errors.hpp"

namespace rct {

Frame crop_window(const Frame& frame, double cx, double cy, int w, int h) {
    if (!frame.valid()) throw SizeError("crop_window: invalid source frame");
    if (w < 1 || h < 1) throw SizeError("crop_window: non-positive window size");

    const int x0 = static_cast<int>(std::floor(cx - w / 2.0 + 0.5));
    const int y0 = static_cast<int>(std::floor(cy - h / 2.0 + 0.5));

    Frame out(w, h);
    for (int y = 0; y < h; ++y) {
        const int sy = std::clamp(y0 + y, 0, frame.height - 1);
        for (int x = 0; x < w; ++x) {
            const int sx = std::clamp(x0 + x, 0, frame.width - 1);
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = frame.at(sx, sy, c);
        }
    }
    return out;
}

Frame resize(const Frame& frame, int out_w, int out_h) {
    if (!frame.valid()) throw SizeError("resize: invalid source frame");
    if (out_w < 1 || out_h < 1) throw SizeError("resize: non-positive target size");
    if (out_w == frame.width && out_h == frame.height) return frame;

    Frame out(out_w, out_h);
    const double sx = static_cast<double>(frame.width) / out_w;
    const double sy = static_cast<double>(frame.height) / out_h;

    for (int y = 0; y < out_h; ++y) {
        const double fy = (y + 0.5) * sy - 0.5;
        int y1 = static_cast<int>(std::floor(fy));
        const double wy = fy - y1;
        int y2 = std::clamp(y1 + 1, 0, frame.height - 1);
        y1 = std::clamp(y1, 0, frame.height - 1);
        for (int x = 0; x < out_w; ++x) {
            const double fx = (x + 0.5) * sx - 0.5;
            int x1 = static_cast<int>(std::floor(fx));
            const double wx = fx - x1;
            int x2 = std::clamp(x1 + 1, 0, frame.width - 1);
            x1 = std::clamp(x1, 0, frame.width - 1);
            for (int c = 0; c < 3; ++c) {
                const double top = (1.0 - wx) * frame.at(x1, y1, c) + wx * frame.at(x2, y1, c);
                const double bot = (1.0 - wx) * frame.at(x1, y2, c) + wx * frame.at(x2, y2, c);
                const double v = (1.0 - wy) * top + wy * bot;
                out.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(v + 0.5, 0.0, 255.0));
            }
        }
    }
    return out;
}

}  // namespace rct
