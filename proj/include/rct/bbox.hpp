#pragma once

#include <string>

namespace rct {

/// Axis-aligned target box in pixel units. Stored 0-based in memory;
/// benchmark files on disk are 1-based, conversion happens at the I/O layer.
struct BoundingBox {
    double x = 0.0;  // left edge
    double y = 0.0;  // top edge
    double w = 0.0;
    double h = 0.0;

    double cx() const { return x + w / 2.0; }
    double cy() const { return y + h / 2.0; }
    double area() const { return w * h; }

    static BoundingBox from_center(double cx, double cy, double w, double h) {
        return {cx - w / 2.0, cy - h / 2.0, w, h};
    }

    bool operator==(const BoundingBox&) const = default;
};

/// Parse one `x,y,w,h` ground-truth line (comma, tab or whitespace separated).
/// Values are returned exactly as written on disk.
BoundingBox parse_groundtruth_line(const std::string& line);

/// Format a box in the on-disk convention; round-trips through
/// parse_groundtruth_line exactly.
std::string format_groundtruth_line(const BoundingBox& box);

/// Shortest decimal representation that reparses to the same double.
std::string format_double(double v);

}  // namespace rct
