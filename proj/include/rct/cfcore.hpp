#pragma once

#include <vector>

#include "rct/config.hpp"
#include "rct/fft.hpp"
#include "rct/grid.hpp"

namespace rct {

/// The desired correlation output: a circularly-even Gaussian with peak 1
/// at bin (0, 0), the zero-shift bin. Its spectrum is therefore real.
struct GaussianLabel {
    Grid values;
    double bandwidth = 0.0;  // sigma, in cells
};

/// sigma = sqrt(target_w * target_h) / 16, target extents in cells.
GaussianLabel make_label(int rows, int cols, double target_w, double target_h);

/// Selects the central filter_rows*filter_cols block out of a
/// window_rows*window_cols grid; embedding zero-pads back.
struct CropOperator {
    int window_rows = 0, window_cols = 0;
    int filter_rows = 0, filter_cols = 0;
    int offset_r = 0, offset_c = 0;

    Grid crop(const Grid& full) const;
    Grid embed(const Grid& small) const;
    bool is_identity() const {
        return filter_rows == window_rows && filter_cols == window_cols;
    }
};

CropOperator make_central_crop(int window_rows, int window_cols, int filter_rows,
                               int filter_cols);

/// Learned filter state. g_hat is the full-window frequency-domain filter
/// used for detection; model_xf is the running spectral feature template.
struct FilterModel {
    SpectralGrid g_hat;
    SpectralGrid model_xf;
    int filter_rows = 0, filter_cols = 0;
    int window_rows = 0, window_cols = 0;
    bool zero_energy = false;  // set when training features had no energy

    /// Cropped spatial filter w, one channel per feature channel.
    FeatureMap spatial_filter(const CropOperator& crop) const;
};

/// Minimize the cropped-support correlation objective by ADMM, alternating
/// a per-bin closed-form solve for g_hat with a spatial crop-and-shrink
/// step for the small filter and a dual ascent on their gap.
///
/// `iterate_trace`, when given, receives the cropped spatial filter after
/// every outer iteration (test hook).
FilterModel learn_filter(const SpectralGrid& xf, const GaussianLabel& label,
                         const CropOperator& crop, const TrackerConfig& cfg,
                         std::vector<FeatureMap>* iterate_trace = nullptr);

/// R = idft2( sum_k conj(g_hat_k) .* zf_k ): bin (i, j) holds the
/// correlation score for circular shift (i, j) of the search features.
Grid compute_response(const FilterModel& model, const SpectralGrid& zf);

/// Direct-evaluation oracle for the learning objective: sums squared label
/// residuals over all circular shifts plus the L2 penalty. O(T*D*K); test
/// use only. The filter w is embedded at the central block of the window.
double eval_objective(const FeatureMap& w, const FeatureMap& features, const Grid& label,
                      double lambda);

}  // namespace rct
