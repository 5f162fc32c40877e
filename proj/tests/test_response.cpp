#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <vector>

#include "rct/config.hpp"
#include "rct/errors.hpp"
#include "rct/response.hpp"

using namespace rct;

namespace {

QuantizedResponse make_quantized(int rows, int cols, std::uint8_t fill = 0) {
    QuantizedResponse q;
    q.rows = rows;
    q.cols = cols;
    q.gray.assign(static_cast<std::size_t>(rows) * cols, fill);
    return q;
}

/// Independent oracle: first threshold whose above-fraction falls within the
/// tolerance, else the smallest threshold minimizing the gap, by trying all
/// 256 of them with direct counting.
ThresholdSearchState enumerate_thresholds(const QuantizedResponse& q, double p, double g) {
    const long total = static_cast<long>(q.gray.size());
    ThresholdSearchState best;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int th = 0; th <= 255; ++th) {
        long above = 0;
        for (std::uint8_t v : q.gray)
            if (v > th) ++above;
        const double p_f = static_cast<double>(above) / static_cast<double>(total);
        const double gap = std::abs(p_f - p);
        ThresholdSearchState state;
        state.threshold = th;
        state.n_above = above;
        state.n_below = total - above;
        state.p_f = p_f;
        if (gap < g) return state;
        if (gap < best_gap) {
            best_gap = gap;
            best = state;
        }
    }
    best.fallback = true;
    return best;
}

/// Independent connected-component labeling: BFS over the 8-neighborhood of
/// above-threshold cells, returning per-cell component ids and their areas.
std::pair<std::vector<int>, std::vector<long>> label_components(const QuantizedResponse& q,
                                                                int threshold) {
    std::vector<int> label(q.gray.size(), -1);
    std::vector<long> areas;
    for (int r = 0; r < q.rows; ++r) {
        for (int c = 0; c < q.cols; ++c) {
            const int i = r * q.cols + c;
            if (q.gray[i] <= threshold || label[i] >= 0) continue;
            const int id = static_cast<int>(areas.size());
            areas.push_back(0);
            std::queue<std::pair<int, int>> frontier;
            frontier.emplace(r, c);
            label[i] = id;
            while (!frontier.empty()) {
                const auto [cr, cc] = frontier.front();
                frontier.pop();
                ++areas[id];
                for (int dr = -1; dr <= 1; ++dr)
                    for (int dc = -1; dc <= 1; ++dc) {
                        const int nr = cr + dr, nc = cc + dc;
                        if (nr < 0 || nr >= q.rows || nc < 0 || nc >= q.cols) continue;
                        const int n = nr * q.cols + nc;
                        if (q.gray[n] > threshold && label[n] < 0) {
                            label[n] = id;
                            frontier.emplace(nr, nc);
                        }
                    }
            }
        }
    }
    return {label, areas};
}

}  // namespace

TEST_CASE("quantize maps range endpoints and midpoint") {
    Grid g(1, 3);
    g.at(0, 0) = 0.0;
    g.at(0, 1) = 0.5;
    g.at(0, 2) = 1.0;
    QuantizedResponse q = quantize(g);
    CHECK(q.at(0, 0) == 0);
    CHECK(q.at(0, 1) == 128);
    CHECK(q.at(0, 2) == 255);

    // The same map shifted below zero quantizes identically.
    g.at(0, 0) = -1.0;
    g.at(0, 1) = 0.0;
    g.at(0, 2) = 1.0;
    q = quantize(g);
    CHECK(q.at(0, 0) == 0);
    CHECK(q.at(0, 1) == 128);
    CHECK(q.at(0, 2) == 255);
}

TEST_CASE("quantize sends constant maps to zero and rejects non-finite input") {
    Grid g(4, 4, 2.75);
    const QuantizedResponse q = quantize(g);
    for (std::uint8_t v : q.gray) CHECK(v == 0);

    g.at(1, 2) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(quantize(g), NumericError);
    g.at(1, 2) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(quantize(g), NumericError);
}

TEST_CASE("quantize hits 0 and 255 on every non-constant map") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        Grid g(9, 13);
        for (double& v : g.values) v = dist(rng);
        const QuantizedResponse q = quantize(g);
        int lo = 255, hi = 0;
        for (std::uint8_t v : q.gray) {
            lo = std::min<int>(lo, v);
            hi = std::max<int>(hi, v);
        }
        CHECK(lo == 0);
        CHECK(hi == 255);
    }
}

TEST_CASE("threshold_search finds the first in-tolerance gray level") {
    // 25 pixels at gray 200 over a gray-10 background: every threshold in
    // [10, 199] yields exactly a quarter above, and 10 comes first.
    QuantizedResponse q = make_quantized(10, 10, 10);
    for (int i = 0; i < 25; ++i) q.gray[i] = 200;
    const ThresholdSearchState state = threshold_search(q, 0.25, 0.05);
    CHECK(state.threshold == 10);
    CHECK(state.n_above == 25);
    CHECK(state.n_below == 75);
    CHECK(state.p_f == 0.25);
    CHECK(!state.fallback);
}

TEST_CASE("threshold_search falls back on an all-zero map") {
    const QuantizedResponse q = make_quantized(8, 8, 0);
    const ThresholdSearchState state = threshold_search(q, 0.2, 0.05);
    CHECK(state.fallback);
    CHECK(state.n_above == 0);
    CHECK(state.n_below == 64);
    CHECK(state.p_f == 0.0);
    CHECK(state.threshold == 0);  // all thresholds tie; smallest wins
}

TEST_CASE("threshold_search validates its arguments") {
    const QuantizedResponse q = make_quantized(4, 4, 7);
    CHECK_THROWS_AS(threshold_search(q, 0.0, 0.1), FormatError);
    CHECK_THROWS_AS(threshold_search(q, 1.0, 0.1), FormatError);
    CHECK_THROWS_AS(threshold_search(q, 0.5, 0.0), FormatError);
    CHECK_THROWS_AS(threshold_search(make_quantized(0, 0), 0.5, 0.1), SizeError);
}

TEST_CASE("above-threshold fraction is non-increasing in the threshold") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> byte(0, 255);
    QuantizedResponse q = make_quantized(16, 16);
    for (std::uint8_t& v : q.gray) v = static_cast<std::uint8_t>(byte(rng));

    long prev = static_cast<long>(q.gray.size());
    for (int th = 0; th <= 255; ++th) {
        long above = 0;
        for (std::uint8_t v : q.gray)
            if (v > th) ++above;
        CHECK(above <= prev);
        prev = above;
    }
}

TEST_CASE("threshold_search agrees with exhaustive enumeration on 1000 random maps") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> dim(4, 24);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<int> sparse(0, 3);
    const std::pair<double, double> settings[] = {
        {0.05, 0.10}, {0.25, 0.05}, {0.5, 0.01}, {0.9, 0.3}, {0.01, 0.002}};

    for (int trial = 0; trial < 1000; ++trial) {
        QuantizedResponse q = make_quantized(dim(rng), dim(rng));
        const bool mostly_zero = sparse(rng) == 0;
        for (std::uint8_t& v : q.gray) {
            const int raw = byte(rng);
            v = static_cast<std::uint8_t>(mostly_zero && raw < 200 ? 0 : raw);
        }
        const auto [p, g] = settings[trial % 5];

        const ThresholdSearchState got = threshold_search(q, p, g);
        const ThresholdSearchState want = enumerate_thresholds(q, p, g);
        CHECK(got.threshold == want.threshold);
        CHECK(got.n_above == want.n_above);
        CHECK(got.n_below == want.n_below);
        CHECK(got.p_f == want.p_f);
        CHECK(got.fallback == want.fallback);
        // Counting exactness: the two parts partition the map.
        CHECK(got.n_above + got.n_below == static_cast<long>(q.gray.size()));
        CHECK(got.p_f == static_cast<double>(got.n_above) /
                             static_cast<double>(q.gray.size()));
    }
}

TEST_CASE("build_mask keeps a 30-cell blob and deletes a 10-cell blob") {
    // 5x6 rectangle of gray 200 on a gray-10 background; target area 100
    // and ratio 0.20 put the cut at 20 cells.
    QuantizedResponse q = make_quantized(10, 10, 10);
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 6; ++c) q.gray[r * 10 + c] = 200;
    ThresholdSearchState state = threshold_search(q, 0.30, 0.05);
    CHECK(state.threshold == 10);
    ReliableMask mask = build_mask(q, state, 0.20, 100.0);
    CHECK(mask.threshold_used == 10);
    CHECK(mask.proposal_ratio_achieved == state.p_f);
    long kept = 0;
    for (int r = 0; r < 10; ++r)
        for (int c = 0; c < 10; ++c) {
            if (mask.at(r, c)) ++kept;
            CHECK(mask.at(r, c) == (r < 5 && c < 6 ? 1 : 0));
        }
    CHECK(kept == 30);

    // A 2x5 blob of the same gray falls under the cut and is removed.
    q = make_quantized(10, 10, 10);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 5; ++c) q.gray[r * 10 + c] = 200;
    state = threshold_search(q, 0.10, 0.05);
    CHECK(state.threshold == 10);
    mask = build_mask(q, state, 0.20, 100.0);
    for (std::uint8_t v : mask.binary) CHECK(v == 0);
}

TEST_CASE("build_mask keeps only the large blob of two") {
    QuantizedResponse q = make_quantized(10, 10, 10);
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 6; ++c) q.gray[r * 10 + c] = 200;
    for (int c = 5; c < 10; ++c) q.gray[9 * 10 + c] = 200;  // 1x5 strip
    const ThresholdSearchState state = threshold_search(q, 0.35, 0.05);
    CHECK(state.threshold == 10);
    const ReliableMask mask = build_mask(q, state, 0.20, 100.0);

    const auto [label, areas] = label_components(q, state.threshold);
    REQUIRE(areas.size() == 2);
    for (int r = 0; r < 10; ++r)
        for (int c = 0; c < 10; ++c) {
            const int id = label[r * 10 + c];
            const bool expect = id >= 0 && areas[id] >= 20;
            CHECK(mask.at(r, c) == (expect ? 1 : 0));
        }
}

TEST_CASE("mask invariants hold on random maps") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> byte(0, 255);
    const TrackerConfig cfg = default_config();

    for (int trial = 0; trial < 50; ++trial) {
        QuantizedResponse q = make_quantized(20, 20);
        for (std::uint8_t& v : q.gray) v = static_cast<std::uint8_t>(byte(rng));
        const ThresholdSearchState state =
            threshold_search(q, cfg.proposal_ratio, cfg.ratio_tolerance);
        const double target_area = 40.0;
        const ReliableMask mask = build_mask(q, state, cfg.area_threshold, target_area);

        // Every kept cell is strictly above the threshold, and every kept
        // component's area clears the cut (independent labeling oracle).
        const auto [label, areas] = label_components(q, state.threshold);
        const double cut = cfg.area_threshold * target_area;
        for (std::size_t i = 0; i < mask.binary.size(); ++i) {
            if (!mask.binary[i]) continue;
            CHECK(q.gray[i] > state.threshold);
            REQUIRE(label[i] >= 0);
            CHECK(static_cast<double>(areas[label[i]]) >= cut);
        }
        // And conversely, every qualifying component survives whole.
        for (std::size_t i = 0; i < mask.binary.size(); ++i)
            if (label[i] >= 0 && static_cast<double>(areas[label[i]]) >= cut)
                CHECK(mask.binary[i] == 1);
    }
}

TEST_CASE("raising the threshold shrinks the above set") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> byte(0, 255);
    QuantizedResponse q = make_quantized(15, 15);
    for (std::uint8_t& v : q.gray) v = static_cast<std::uint8_t>(byte(rng));

    for (int th = 0; th < 255; ++th)
        for (std::uint8_t v : q.gray)
            if (v > th + 1) CHECK(v > th);  // A(th+1) subset of A(th)
}

TEST_CASE("reliable_response applies the mask pointwise") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> dist(0.0, 2.0);
    Grid response(6, 7);
    for (double& v : response.values) v = dist(rng);

    ReliableMask ones;
    ones.rows = 6;
    ones.cols = 7;
    ones.binary.assign(42, 1);
    const Grid same = reliable_response(response, ones);
    for (std::size_t i = 0; i < same.values.size(); ++i)
        CHECK(same.values[i] == response.values[i]);

    ReliableMask zeros = ones;
    zeros.binary.assign(42, 0);
    const Grid none = reliable_response(response, zeros);
    for (double v : none.values) CHECK(v == 0.0);

    ReliableMask mixed = ones;
    for (std::size_t i = 0; i < 42; i += 3) mixed.binary[i] = 0;
    const Grid masked = reliable_response(response, mixed);
    for (std::size_t i = 0; i < 42; ++i) {
        CHECK(masked.values[i] <= response.values[i]);  // response >= 0 here
        if (mixed.binary[i])
            CHECK(masked.values[i] == response.values[i]);
        else
            CHECK(masked.values[i] == 0.0);
    }

    ReliableMask wrong = ones;
    wrong.cols = 6;
    CHECK_THROWS_AS(reliable_response(response, wrong), SizeError);
}

TEST_CASE("locate_peak argmax and tie-breaking") {
    Grid g(6, 8);
    g.at(3, 5) = 2.0;
    Peak peak = locate_peak(g);
    CHECK(peak.row == 3);
    CHECK(peak.col == 5);
    CHECK(peak.value == 2.0);
    CHECK(!peak.fallback);

    Grid ties(6, 6);
    ties.at(2, 2) = 1.0;
    ties.at(4, 4) = 1.0;
    peak = locate_peak(ties);
    CHECK(peak.row == 2);
    CHECK(peak.col == 2);

    const Peak nothing = locate_peak(Grid(5, 5));
    CHECK(nothing.fallback);

    CHECK_THROWS_AS(locate_peak(Grid()), SizeError);
}

TEST_CASE("masking moves the argmax off a steep distractor spike") {
    // Broad Gaussian (the target) plus a higher but far narrower spike (the
    // distractor): the spike tops the raw map yet covers too little area to
    // survive pruning, so the reliable peak lands on the broad mode.
    Grid response(40, 40);
    const double broad_r = 28.0, broad_c = 30.0;
    const double spike_r = 10.0, spike_c = 8.0;
    for (int r = 0; r < 40; ++r)
        for (int c = 0; c < 40; ++c) {
            const double db = (r - broad_r) * (r - broad_r) + (c - broad_c) * (c - broad_c);
            const double ds = (r - spike_r) * (r - spike_r) + (c - spike_c) * (c - spike_c);
            response.at(r, c) = 0.8 * std::exp(-db / 32.0) + std::exp(-ds / 0.98);
        }

    const Peak raw = locate_peak(response);
    CHECK(raw.row == 10);
    CHECK(raw.col == 8);

    const TrackerConfig cfg = default_config();
    const ReliableResult result = reliable_peak(response, cfg, 60.0);
    CHECK(!result.uncertain);
    CHECK(result.peak.row == 28);
    CHECK(result.peak.col == 30);
    CHECK(result.mask.at(10, 8) == 0);
    CHECK(result.mask.at(28, 30) == 1);
}

TEST_CASE("reliable_peak never lands on a masked cell unless uncertain") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const TrackerConfig cfg = default_config();

    for (int trial = 0; trial < 50; ++trial) {
        Grid response(18, 18);
        for (double& v : response.values) v = dist(rng);
        const ReliableResult result = reliable_peak(response, cfg, 30.0);
        if (!result.uncertain) {
            CHECK(result.mask.at(result.peak.row, result.peak.col) == 1);
            CHECK(result.peak.value > 0.0);
        } else {
            const Peak raw = locate_peak(response);
            CHECK(result.peak.row == raw.row);
            CHECK(result.peak.col == raw.col);
            CHECK(result.peak.value == raw.value);
        }
    }
}

TEST_CASE("reliable_peak flags a constant map as uncertain") {
    const Grid flat(12, 12, 3.5);
    const ReliableResult result = reliable_peak(flat, default_config(), 20.0);
    CHECK(result.uncertain);
    // A constant map quantizes to all zeros, so p_f is 0 at every threshold
    // and never comes within the default tolerance of the default ratio.
    CHECK(result.threshold.fallback);
    CHECK(result.threshold.n_above == 0);
    CHECK(result.peak.row == 0);
    CHECK(result.peak.col == 0);
    for (double v : result.reliable.values) CHECK(v == 0.0);
}
