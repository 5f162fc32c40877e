#include "rct/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rct/errors.hpp"

namespace rct {

QuantizedResponse quantize(const Grid& response) {
    QuantizedResponse q;
    q.rows = response.rows;
    q.cols = response.cols;
    q.gray.assign(response.values.size(), 0);

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : response.values) {
        if (!std::isfinite(v)) throw NumericError("quantize: non-finite response value");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo)) return q;  // constant map -> all zeros

    const double scale = 255.0 / (hi - lo);
    for (std::size_t i = 0; i < response.values.size(); ++i) {
        q.gray[i] = static_cast<std::uint8_t>(
            std::floor((response.values[i] - lo) * scale + 0.5));
    }
    return q;
}

ThresholdSearchState threshold_search(const QuantizedResponse& q, double proposal_ratio,
                                      double ratio_tolerance) {
    if (!(proposal_ratio > 0.0 && proposal_ratio < 1.0))
        throw FormatError("threshold_search: proposal ratio must lie in (0, 1)");
    if (!(ratio_tolerance > 0.0))
        throw FormatError("threshold_search: ratio tolerance must be positive");
    if (q.gray.empty()) throw SizeError("threshold_search: empty map");

    // Histogram once; the count above Th then falls out cumulatively.
    long hist[256] = {0};
    for (std::uint8_t g : q.gray) ++hist[g];
    const long total = static_cast<long>(q.gray.size());

    ThresholdSearchState best;
    double best_gap = std::numeric_limits<double>::infinity();
    long above = total;
    for (int th = 0; th <= 255; ++th) {
        above -= hist[th];  // pixels with gray > th
        const double p_f = static_cast<double>(above) / static_cast<double>(total);
        const double gap = std::abs(p_f - proposal_ratio);
        if (gap < ratio_tolerance) {
            ThresholdSearchState state;
            state.threshold = th;
            state.n_above = above;
            state.n_below = total - above;
            state.p_f = p_f;
            return state;
        }
        if (gap < best_gap) {
            best_gap = gap;
            best.threshold = th;
            best.n_above = above;
            best.n_below = total - above;
            best.p_f = p_f;
        }
    }
    best.fallback = true;
    return best;
}

namespace {

/// Flood-fills the 8-connected component containing the seed over cells
/// where `above` is 1 and `label` is 0; records members and returns area.
long flood_component(int rows, int cols, const std::vector<std::uint8_t>& above,
                     std::vector<std::uint8_t>& labeled, int seed_r, int seed_c,
                     std::vector<int>& members) {
    members.clear();
    std::vector<int> stack;
    const auto idx = [cols](int r, int c) { return r * cols + c; };
    stack.push_back(idx(seed_r, seed_c));
    labeled[idx(seed_r, seed_c)] = 1;
    long area = 0;
    while (!stack.empty()) {
        const int cell = stack.back();
        stack.pop_back();
        members.push_back(cell);
        ++area;
        const int r = cell / cols, c = cell % cols;
        for (int dr = -1; dr <= 1; ++dr) {
            for (int dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0) continue;
                const int nr = r + dr, nc = c + dc;
                if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
                const int n = idx(nr, nc);
                if (above[n] && !labeled[n]) {
                    labeled[n] = 1;
                    stack.push_back(n);
                }
            }
        }
    }
    return area;
}

}  // namespace

ReliableMask build_mask(const QuantizedResponse& q, const ThresholdSearchState& state,
                        double area_ratio, double target_area) {
    ReliableMask mask;
    mask.rows = q.rows;
    mask.cols = q.cols;
    mask.threshold_used = state.threshold;
    mask.proposal_ratio_achieved = state.p_f;
    mask.binary.assign(q.gray.size(), 0);

    std::vector<std::uint8_t> above(q.gray.size(), 0);
    for (std::size_t i = 0; i < q.gray.size(); ++i)
        above[i] = q.gray[i] > state.threshold ? 1 : 0;

    const double min_area = area_ratio * target_area;
    std::vector<std::uint8_t> labeled(q.gray.size(), 0);
    std::vector<int> members;
    for (int r = 0; r < q.rows; ++r) {
        for (int c = 0; c < q.cols; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * q.cols + c;
            if (!above[i] || labeled[i]) continue;
            const long area = flood_component(q.rows, q.cols, above, labeled, r, c, members);
            if (static_cast<double>(area) >= min_area)
                for (int cell : members) mask.binary[cell] = 1;
        }
    }
    return mask;
}

Grid reliable_response(const Grid& response, const ReliableMask& mask) {
    if (response.rows != mask.rows || response.cols != mask.cols)
        throw SizeError("reliable_response: response and mask dims differ");
    Grid out(response.rows, response.cols);
    for (std::size_t i = 0; i < response.values.size(); ++i)
        out.values[i] = mask.binary[i] ? response.values[i] : 0.0;
    return out;
}

Peak locate_peak(const Grid& response) {
    if (response.values.empty()) throw SizeError("locate_peak: empty map");
    Peak peak;
    peak.value = response.values[0];
    for (int r = 0; r < response.rows; ++r) {
        for (int c = 0; c < response.cols; ++c) {
            const double v = response.at(r, c);
            if (v > peak.value) {
                peak.value = v;
                peak.row = r;
                peak.col = c;
            }
        }
    }
    peak.fallback = !(peak.value > 0.0);
    return peak;
}

ReliableResult reliable_peak(const Grid& response, const TrackerConfig& cfg,
                             double target_cell_area) {
    ReliableResult result;
    const QuantizedResponse q = quantize(response);
    result.threshold = threshold_search(q, cfg.proposal_ratio, cfg.ratio_tolerance);
    result.mask = build_mask(q, result.threshold, cfg.area_threshold, target_cell_area);
    result.reliable = reliable_response(response, result.mask);
    result.peak = locate_peak(result.reliable);
    if (result.peak.fallback) {
        result.uncertain = true;
        result.peak = locate_peak(response);
    }
    return result;
}

}  // namespace rct
