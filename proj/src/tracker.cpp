#include "rct/tracker.hpp"

#include <algorithm>
#include <cmath>

#include "rct/errors.hpp"
#include "rct/fft.hpp"

namespace rct {

namespace {

// Numeric guard rails on the scale state; generous enough never to bind on
// plausible sequences while keeping a diverged tracker finite.
constexpr double kScaleMin = 0.1;
constexpr double kScaleMax = 10.0;

SpectralGrid window_features(const TrackerState& s, const Frame& frame, double factor) {
    return dft2(window_feature_map(s, frame, factor));
}

// Rotate the correlation output so the zero-shift bin sits at the window
// center. Component analysis in the response module uses non-wrapping
// connectivity, so the peak lobe of a well-centred target must appear as one
// contiguous blob instead of four fragments split across the map corners.
Grid centered(const Grid& raw) {
    Grid out(raw.rows, raw.cols);
    const int half_r = raw.rows / 2;
    const int half_c = raw.cols / 2;
    for (int r = 0; r < raw.rows; ++r)
        for (int c = 0; c < raw.cols; ++c)
            out.at((r + half_r) % raw.rows, (c + half_c) % raw.cols) = raw.at(r, c);
    return out;
}

// Moving average m <- (1 - eta) m + eta f, arranged so the boundary contracts
// hold without rounding residue: eta = 0 and f = m leave m unchanged, eta = 1
// installs f verbatim.
void blend(SpectralGrid& model, const SpectralGrid& fresh, double eta) {
    if (eta == 0.0) return;
    if (eta == 1.0) {
        model.data = fresh.data;
        return;
    }
    for (std::size_t i = 0; i < model.data.size(); ++i)
        model.data[i] += eta * (fresh.data[i] - model.data[i]);
}

}  // namespace

FeatureMap window_feature_map(const TrackerState& state, const Frame& frame,
                              double factor) {
    const int crop_w = std::max<long>(1, std::lround(state.window_w() * factor));
    const int crop_h = std::max<long>(1, std::lround(state.window_h() * factor));
    Frame patch = crop_window(frame, state.pos_x, state.pos_y, crop_w, crop_h);
    patch = resize(patch, state.geometry.canon_w, state.geometry.canon_h);
    return apply_window(fuse(patch, state.config.cell_size), state.cosine);
}

std::vector<double> scale_factors(const TrackerConfig& cfg) {
    std::vector<double> factors(cfg.num_scales);
    const int half = (cfg.num_scales - 1) / 2;
    for (int i = 0; i < cfg.num_scales; ++i)
        factors[i] = std::pow(cfg.scale_step, i - half);
    return factors;
}

TrackerState init(const Frame& frame, const BoundingBox& initial_box,
                  const TrackerConfig& cfg) {
    cfg.validate();
    if (!frame.valid()) throw SizeError("init: invalid frame");
    if (!(initial_box.w > 0.0) || !(initial_box.h > 0.0))
        throw SizeError("init: initial box has non-positive extent");

    TrackerState s;
    s.config = cfg;
    s.pos_x = initial_box.cx();
    s.pos_y = initial_box.cy();
    s.base_w = initial_box.w;
    s.base_h = initial_box.h;
    s.frame_width = frame.width;
    s.frame_height = frame.height;

    // Padded window with the target's aspect ratio; its area is
    // (1 + search_padding) times the target area.
    const double pad = std::sqrt(1.0 + cfg.search_padding);
    WindowGeometry& g = s.geometry;
    g.base_window_w = initial_box.w * pad;
    g.base_window_h = initial_box.h * pad;
    const int cell = cfg.cell_size;
    g.window_cols = std::max<long>(1, std::lround(g.base_window_w / cell));
    g.window_rows = std::max<long>(1, std::lround(g.base_window_h / cell));
    g.canon_w = g.window_cols * cell;
    g.canon_h = g.window_rows * cell;
    g.target_cells_w = initial_box.w * (g.canon_w / g.base_window_w) / cell;
    g.target_cells_h = initial_box.h * (g.canon_h / g.base_window_h) / cell;
    g.filter_cols = static_cast<int>(std::floor(g.target_cells_w));
    g.filter_rows = static_cast<int>(std::floor(g.target_cells_h));
    if (g.filter_cols < 1 || g.filter_rows < 1)
        throw SizeError("init: target spans less than one feature cell");
    if (g.filter_cols >= g.window_cols || g.filter_rows >= g.window_rows)
        throw SizeError("init: search window leaves no background margin");

    s.crop = make_central_crop(g.window_rows, g.window_cols, g.filter_rows, g.filter_cols);
    s.label = make_label(g.window_rows, g.window_cols, g.target_cells_w, g.target_cells_h);
    s.cosine = make_cosine_window(g.window_rows, g.window_cols);

    const SpectralGrid xf = window_features(s, frame, 1.0);
    s.model = learn_filter(xf, s.label, s.crop, cfg);
    return s;
}

std::vector<ScaleSample> scale_pyramid(const TrackerState& state, const Frame& frame) {
    std::vector<ScaleSample> samples;
    samples.reserve(state.config.num_scales);
    for (double factor : scale_factors(state.config)) {
        Grid response =
            centered(compute_response(state.model, window_features(state, frame, factor)));
        ScaleSample sample;
        sample.scale_factor = factor;
        if (state.config.use_mask) {
            ReliableResult rel =
                reliable_peak(response, state.config, state.geometry.target_cell_area());
            sample.response = std::move(rel.reliable);
            sample.peak_value = rel.peak.value;
            sample.peak_row = rel.peak.row;
            sample.peak_col = rel.peak.col;
            sample.uncertain = rel.uncertain;
        } else {
            const Peak peak = locate_peak(response);
            sample.response = std::move(response);
            sample.peak_value = peak.value;
            sample.peak_row = peak.row;
            sample.peak_col = peak.col;
            sample.uncertain = peak.fallback;
        }
        samples.push_back(std::move(sample));
    }
    return samples;
}

void update_model(TrackerState& state, const SpectralGrid& new_xf,
                  const FilterModel& new_filter) {
    if (!new_xf.same_shape(state.model.model_xf) ||
        !new_filter.g_hat.same_shape(state.model.g_hat))
        throw SizeError("update_model: model dims mismatch");
    const double eta = state.config.eta;
    blend(state.model.model_xf, new_xf, eta);
    blend(state.model.g_hat, new_filter.g_hat, eta);
    state.model.zero_energy = state.model.zero_energy && new_filter.zero_energy;
}

BoundingBox track_frame(TrackerState& state, const Frame& frame) {
    if (!frame.valid() || frame.width != state.frame_width ||
        frame.height != state.frame_height)
        throw SizeError("track_frame: frame size differs from the initializing frame");

    const std::vector<ScaleSample> samples = scale_pyramid(state, frame);

    // Highest reliable peak wins; certain samples outrank fallback ones and
    // ties resolve to the earlier (smaller) scale factor.
    std::size_t best = 0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].uncertain != samples[best].uncertain) {
            if (!samples[i].uncertain) best = i;
            continue;
        }
        if (samples[i].peak_value > samples[best].peak_value) best = i;
    }
    const ScaleSample& pick = samples[best];
    state.last_uncertain = pick.uncertain;
    if (pick.uncertain) ++state.uncertain_frames;
    state.last_response = pick.response;

    // Responses are centered, so the cell offset is just the peak's distance
    // from the window center; convert it to frame pixels.
    const WindowGeometry& g = state.geometry;
    const int dr = pick.peak_row - g.window_rows / 2;
    const int dc = pick.peak_col - g.window_cols / 2;
    const double scale = state.current_scale * pick.scale_factor;
    const double px_per_cell_x = state.config.cell_size * (g.base_window_w / g.canon_w);
    const double px_per_cell_y = state.config.cell_size * (g.base_window_h / g.canon_h);
    state.pos_x += dc * px_per_cell_x * scale;
    state.pos_y += dr * px_per_cell_y * scale;
    state.pos_x = std::clamp(state.pos_x, 0.0, static_cast<double>(frame.width - 1));
    state.pos_y = std::clamp(state.pos_y, 0.0, static_cast<double>(frame.height - 1));
    state.current_scale = std::clamp(scale, kScaleMin, kScaleMax);

    // Learn this frame's model at the new position and fold it in. The
    // fresh filter trains on the already-averaged template so the moving
    // average smooths both what the filter sees and the filter itself.
    const SpectralGrid new_xf = window_features(state, frame, 1.0);
    SpectralGrid blended = state.model.model_xf;
    blend(blended, new_xf, state.config.eta);
    const FilterModel fresh = learn_filter(blended, state.label, state.crop, state.config);
    update_model(state, new_xf, fresh);

    return state.box();
}

}  // namespace rct
