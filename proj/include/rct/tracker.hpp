#pragma once

#include <vector>

#include "rct/bbox.hpp"
#include "rct/cfcore.hpp"
#include "rct/config.hpp"
#include "rct/features.hpp"
#include "rct/frame.hpp"
#include "rct/response.hpp"

namespace rct {

/// Detection geometry fixed at init. Every search window, whatever its
/// scale, is resized to one canonical cell grid so the target always spans
/// the same filter support and responses stay comparable across scales.
struct WindowGeometry {
    int window_rows = 0, window_cols = 0;  // canonical window, cells
    int filter_rows = 0, filter_cols = 0;  // filter support, cells
    int canon_w = 0, canon_h = 0;          // canonical window, pixels
    double base_window_w = 0.0, base_window_h = 0.0;   // search window, px at scale 1
    double target_cells_w = 0.0, target_cells_h = 0.0; // canonical target extent, cells

    double target_cell_area() const { return target_cells_w * target_cells_h; }
};

/// One rung of the scale pyramid: the (masked) response computed on the
/// window cropped at `scale_factor` times the current scale.
struct ScaleSample {
    double scale_factor = 1.0;
    Grid response;
    double peak_value = 0.0;
    int peak_row = 0, peak_col = 0;
    bool uncertain = false;  // masking left no positive bin; peak is the raw argmax
};

struct TrackerState {
    TrackerConfig config;
    WindowGeometry geometry;
    FilterModel model;
    GaussianLabel label;
    CropOperator crop;
    Grid cosine;

    double pos_x = 0.0, pos_y = 0.0;  // target center, pixels
    double base_w = 0.0, base_h = 0.0;  // target size at scale 1
    double current_scale = 1.0;
    int frame_width = 0, frame_height = 0;

    bool last_uncertain = false;    // reliable mask was empty on the latest frame
    long uncertain_frames = 0;
    Grid last_response;             // selected scale's response on the latest frame

    double target_w() const { return base_w * current_scale; }
    double target_h() const { return base_h * current_scale; }
    double window_w() const { return geometry.base_window_w * current_scale; }
    double window_h() const { return geometry.base_window_h * current_scale; }
    BoundingBox box() const {
        return BoundingBox::from_center(pos_x, pos_y, target_w(), target_h());
    }
};

/// The scale-pyramid factors: scale_step^i for i in [-(S-1)/2, (S-1)/2].
std::vector<double> scale_factors(const TrackerConfig& cfg);

/// The fused, cosine-windowed features of the search window cropped at
/// `factor` times the current scale (the detector's input; debug hook).
FeatureMap window_feature_map(const TrackerState& state, const Frame& frame,
                              double factor);

/// Crop the padded window around the initial box, learn the first filter
/// and freeze the canonical geometry. Throws SizeError when the box spans
/// less than one feature cell.
TrackerState init(const Frame& frame, const BoundingBox& initial_box,
                  const TrackerConfig& cfg);

/// Compute the response at every pyramid scale around the current position.
std::vector<ScaleSample> scale_pyramid(const TrackerState& state, const Frame& frame);

/// Moving-average model update: both the spectral template and the filter
/// blend toward the freshly learned per-frame model at rate eta.
void update_model(TrackerState& state, const SpectralGrid& new_xf,
                  const FilterModel& new_filter);

/// One tracking step: detect over the pyramid, move to the best reliable
/// peak, adopt its scale, then update the model. Returns the new box.
BoundingBox track_frame(TrackerState& state, const Frame& frame);

}  // namespace rct
