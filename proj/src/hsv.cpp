#include "rct/hsv.hpp"

#include <algorithm>

#include "rct/errors.hpp"

namespace rct {

HsvImage rgb_to_hsv(const Frame& frame) {
    if (!frame.valid()) throw SizeError("rgb_to_hsv: invalid frame");
    HsvImage out;
    out.width = frame.width;
    out.height = frame.height;
    out.h = Grid(frame.height, frame.width);
    out.s = Grid(frame.height, frame.width);
    out.v = Grid(frame.height, frame.width);

    for (int y = 0; y < frame.height; ++y) {
        for (int x = 0; x < frame.width; ++x) {
            const double r = frame.at(x, y, 0) / 255.0;
            const double g = frame.at(x, y, 1) / 255.0;
            const double b = frame.at(x, y, 2) / 255.0;
            const double mx = std::max({r, g, b});
            const double mn = std::min({r, g, b});
            const double delta = mx - mn;

            out.v.at(y, x) = mx;
            const double s = mx > 0.0 ? delta / mx : 0.0;
            out.s.at(y, x) = s;

            double h = 0.0;
            if (delta > 0.0) {
                if (mx == r) h = 60.0 * ((g - b) / delta);
                else if (mx == g) h = 60.0 * ((b - r) / delta + 2.0);
                else h = 60.0 * ((r - g) / delta + 4.0);
                if (h < 0.0) h += 360.0;
                if (h >= 360.0) h -= 360.0;
            }
            out.h.at(y, x) = h;
        }
    }
    return out;
}

}  // namespace rct
