#include "rct/hog.hpp"

#include <algorithm>
#include <cmath>

#include "rct/errors.hpp"

namespace rct {
namespace {

constexpr double kNormEps = 1e-12;
constexpr double kTextureScale = 0.2357;  // ~ 1/sqrt(18)
constexpr double kTwoPi = 6.283185307179586476925286766559;

inline int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

}  // namespace

FeatureMap extract_hog(const Grid& plane, int cell_size) {
    if (cell_size < 1) throw SizeError("extract_hog: cell_size must be >= 1");
    const int rows = plane.rows / cell_size;
    const int cols = plane.cols / cell_size;
    if (rows < 1 || cols < 1)
        throw SizeError("extract_hog: plane smaller than one cell (" +
                        std::to_string(plane.rows) + "x" + std::to_string(plane.cols) + ")");

    // Pass 1: soft-binned orientation histograms per cell.
    FeatureMap hist(rows, cols, kHogOrientations);
    for (int y = 0; y < plane.rows; ++y) {
        const int ym = clamp_index(y - 1, plane.rows);
        const int yp = clamp_index(y + 1, plane.rows);
        for (int x = 0; x < plane.cols; ++x) {
            const int xm = clamp_index(x - 1, plane.cols);
            const int xp = clamp_index(x + 1, plane.cols);
            const double dx = plane.at(y, xp) - plane.at(y, xm);
            const double dy = plane.at(yp, x) - plane.at(ym, x);
            const double mag = std::sqrt(dx * dx + dy * dy);
            if (mag == 0.0) continue;

            double theta = std::atan2(dy, dx);
            if (theta < 0.0) theta += kTwoPi;
            const double ob = theta / kTwoPi * kHogOrientations;  // in [0, 18)
            int o0 = static_cast<int>(ob);
            if (o0 >= kHogOrientations) o0 = 0;  // guard against ob == 18 rounding
            const int o1 = (o0 + 1) % kHogOrientations;
            const double wo1 = ob - o0;

            // Bilinear spread into the four neighboring cells.
            const double cx = (x + 0.5) / cell_size - 0.5;
            const double cy = (y + 0.5) / cell_size - 0.5;
            const int c0 = static_cast<int>(std::floor(cx));
            const int r0 = static_cast<int>(std::floor(cy));
            const double wc1 = cx - c0;
            const double wr1 = cy - r0;
            for (int dr = 0; dr < 2; ++dr) {
                const int r = r0 + dr;
                if (r < 0 || r >= rows) continue;
                const double wr = dr ? wr1 : 1.0 - wr1;
                for (int dc = 0; dc < 2; ++dc) {
                    const int c = c0 + dc;
                    if (c < 0 || c >= cols) continue;
                    const double w = mag * wr * (dc ? wc1 : 1.0 - wc1);
                    hist.at(r, c, o0) += w * (1.0 - wo1);
                    hist.at(r, c, o1) += w * wo1;
                }
            }
        }
    }

    // Pass 2: contrast-insensitive gradient energy per cell.
    Grid energy(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            double e = 0.0;
            for (int o = 0; o < kHogInsensitive; ++o) {
                const double s = hist.at(r, c, o) + hist.at(r, c, o + kHogInsensitive);
                e += s * s;
            }
            energy.at(r, c) = e;
        }
    }

    // Pass 3: normalize against the four 2x2 blocks around each cell,
    // truncate, and accumulate the output channels.
    FeatureMap out(rows, cols, kHogChannels);
    for (int r = 0; r < rows; ++r) {
        const int rm = clamp_index(r - 1, rows);
        const int rp = clamp_index(r + 1, rows);
        for (int c = 0; c < cols; ++c) {
            const int cm = clamp_index(c - 1, cols);
            const int cp = clamp_index(c + 1, cols);
            const double e = energy.at(r, c);
            const double norms[4] = {
                1.0 / std::sqrt(e + energy.at(r, cp) + energy.at(rp, c) + energy.at(rp, cp) + kNormEps),
                1.0 / std::sqrt(e + energy.at(r, cp) + energy.at(rm, c) + energy.at(rm, cp) + kNormEps),
                1.0 / std::sqrt(e + energy.at(r, cm) + energy.at(rp, c) + energy.at(rp, cm) + kNormEps),
                1.0 / std::sqrt(e + energy.at(r, cm) + energy.at(rm, c) + energy.at(rm, cm) + kNormEps),
            };

            double texture[4] = {0.0, 0.0, 0.0, 0.0};
            for (int o = 0; o < kHogOrientations; ++o) {
                const double v = hist.at(r, c, o);
                double sum = 0.0;
                for (int n = 0; n < 4; ++n) {
                    const double t = std::min(v * norms[n], kHogTruncation);
                    sum += t;
                    texture[n] += t;
                }
                out.at(r, c, o) = 0.5 * sum;
            }
            for (int o = 0; o < kHogInsensitive; ++o) {
                const double v = hist.at(r, c, o) + hist.at(r, c, o + kHogInsensitive);
                double sum = 0.0;
                for (int n = 0; n < 4; ++n) sum += std::min(v * norms[n], kHogTruncation);
                out.at(r, c, kHogOrientations + o) = 0.5 * sum;
            }
            for (int n = 0; n < 4; ++n)
                out.at(r, c, kHogOrientations + kHogInsensitive + n) = kTextureScale * texture[n];
        }
    }
    return out;
}

}  // namespace rct
