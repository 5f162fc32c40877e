#pragma once

#include <cstdint>
#include <vector>

#include "rct/config.hpp"
#include "rct/grid.hpp"

namespace rct {

/// 8-bit quantization of a response map: [min, max] mapped affinely onto
/// [0, 255] with half-up rounding; a constant map quantizes to all zeros.
struct QuantizedResponse {
    int rows = 0, cols = 0;
    std::vector<std::uint8_t> gray;

    std::uint8_t at(int r, int c) const {
        return gray[static_cast<std::size_t>(r) * cols + c];
    }
};

QuantizedResponse quantize(const Grid& response);

/// State of the gray-level threshold scan. N_A counts pixels strictly above
/// Th, N_B the rest, so p_f = N_A / (N_A + N_B) exactly.
struct ThresholdSearchState {
    int threshold = 0;
    long n_above = 0;
    long n_below = 0;
    double p_f = 0.0;
    bool fallback = false;  // no threshold brought p_f within tolerance
};

/// Scans Th ascending from 0 to 255 and returns the first threshold whose
/// above-threshold fraction p_f satisfies |p_f - proposal_ratio| <
/// ratio_tolerance. When none does, returns the Th minimizing the gap
/// (smallest Th on ties) with the fallback flag set.
ThresholdSearchState threshold_search(const QuantizedResponse& q, double proposal_ratio,
                                      double ratio_tolerance);

/// Binary fine mask over response cells; 1 keeps a cell.
struct ReliableMask {
    int rows = 0, cols = 0;
    std::vector<std::uint8_t> binary;
    int threshold_used = 0;
    double proposal_ratio_achieved = 0.0;

    std::uint8_t at(int r, int c) const {
        return binary[static_cast<std::size_t>(r) * cols + c];
    }
};

/// Binarizes at the searched threshold, then deletes 8-connected components
/// whose area falls below area_ratio * target_area (areas in cells).
ReliableMask build_mask(const QuantizedResponse& q, const ThresholdSearchState& state,
                        double area_ratio, double target_area);

/// Pointwise product of the response with the mask; masked cells become 0.
Grid reliable_response(const Grid& response, const ReliableMask& mask);

/// Response argmax. Ties break toward the smallest row, then column. The
/// fallback flag is set when the maximum is not positive (e.g. a fully
/// masked map); callers should then re-locate on the unmasked response.
struct Peak {
    int row = 0, col = 0;
    double value = 0.0;
    bool fallback = false;
};

Peak locate_peak(const Grid& response);

/// Full reliable-response pipeline: quantize, search the threshold, prune
/// small components, mask, and locate the peak. When the masked map has no
/// positive peak the raw argmax is used and `uncertain` is set.
struct ReliableResult {
    ThresholdSearchState threshold;
    ReliableMask mask;
    Grid reliable;
    Peak peak;
    bool uncertain = false;
};

ReliableResult reliable_peak(const Grid& response, const TrackerConfig& cfg,
                             double target_cell_area);

}  // namespace rct
