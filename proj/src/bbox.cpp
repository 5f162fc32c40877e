#include "rct/bbox.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "rct/errors.hpp"

namespace rct {

std::string format_double(double v) {
    char buf[64];
    // Integral values print as plain integers (the ground-truth file norm).
    if (v >= -1e15 && v <= 1e15 && v == std::floor(v)) {
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
        return buf;
    }
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

BoundingBox parse_groundtruth_line(const std::string& line) {
    std::vector<double> fields;
    const char* p = line.c_str();
    while (*p) {
        while (*p == ',' || *p == '\t' || *p == ' ' || *p == '\r') ++p;
        if (!*p) break;
        char* end = nullptr;
        double v = std::strtod(p, &end);
        if (end == p) throw FormatError("ground-truth line has a non-numeric field: '" + line + "'");
        fields.push_back(v);
        p = end;
    }
    if (fields.size() != 4)
        throw FormatError("ground-truth line must have 4 fields, got " +
                          std::to_string(fields.size()) + ": '" + line + "'");
    if (fields[2] <= 0.0 || fields[3] <= 0.0)
        throw FormatError("ground-truth box has non-positive size: '" + line + "'");
    return {fields[0], fields[1], fields[2], fields[3]};
}

std::string format_groundtruth_line(const BoundingBox& box) {
    return format_double(box.x) + "," + format_double(box.y) + "," + format_double(box.w) +
           "," + format_double(box.h);
}

}  // namespace rct
