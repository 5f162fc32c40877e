#include "rct/cfcore.hpp"

#include <cmath>

#include "rct/errors.hpp"

namespace rct {

GaussianLabel make_label(int rows, int cols, double target_w, double target_h) {
    if (rows < 1 || cols < 1) throw SizeError("make_label: empty grid");
    if (!(target_w > 0.0 && target_h > 0.0)) throw SizeError("make_label: non-positive target");

    GaussianLabel label;
    label.bandwidth = std::sqrt(target_w * target_h) / 16.0;
    const double inv2s2 = 1.0 / (2.0 * label.bandwidth * label.bandwidth);
    label.values = Grid(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const double dr = r <= rows / 2 ? r : r - rows;  // circular distance to bin 0
        for (int c = 0; c < cols; ++c) {
            const double dc = c <= cols / 2 ? c : c - cols;
            label.values.at(r, c) = std::exp(-(dr * dr + dc * dc) * inv2s2);
        }
    }
    return label;
}

CropOperator make_central_crop(int window_rows, int window_cols, int filter_rows,
                               int filter_cols) {
    if (filter_rows < 1 || filter_cols < 1 || filter_rows > window_rows ||
        filter_cols > window_cols)
        throw SizeError("make_central_crop: filter support must fit inside the window");
    CropOperator crop;
    crop.window_rows = window_rows;
    crop.window_cols = window_cols;
    crop.filter_rows = filter_rows;
    crop.filter_cols = filter_cols;
    crop.offset_r = (window_rows - filter_rows) / 2;
    crop.offset_c = (window_cols - filter_cols) / 2;
    return crop;
}

Grid CropOperator::crop(const Grid& full) const {
    if (full.rows != window_rows || full.cols != window_cols)
        throw SizeError("CropOperator::crop: grid does not match window dims");
    Grid out(filter_rows, filter_cols);
    for (int r = 0; r < filter_rows; ++r)
        for (int c = 0; c < filter_cols; ++c)
            out.at(r, c) = full.at(offset_r + r, offset_c + c);
    return out;
}

Grid CropOperator::embed(const Grid& small) const {
    if (small.rows != filter_rows || small.cols != filter_cols)
        throw SizeError("CropOperator::embed: grid does not match filter dims");
    Grid out(window_rows, window_cols);
    for (int r = 0; r < filter_rows; ++r)
        for (int c = 0; c < filter_cols; ++c)
            out.at(offset_r + r, offset_c + c) = small.at(r, c);
    return out;
}

FeatureMap FilterModel::spatial_filter(const CropOperator& crop) const {
    FeatureMap w(crop.filter_rows, crop.filter_cols, g_hat.channels);
    for (int k = 0; k < g_hat.channels; ++k) {
        const Grid small = crop.crop(idft2(g_hat, k));
        std::copy(small.values.begin(), small.values.end(), w.channel(k));
    }
    return w;
}

FilterModel learn_filter(const SpectralGrid& xf, const GaussianLabel& label,
                         const CropOperator& crop, const TrackerConfig& cfg,
                         std::vector<FeatureMap>* iterate_trace) {
    const int rows = xf.rows, cols = xf.cols, channels = xf.channels;
    if (rows != crop.window_rows || cols != crop.window_cols)
        throw SizeError("learn_filter: crop operator does not match feature dims");
    if (label.values.rows != rows || label.values.cols != cols)
        throw SizeError("learn_filter: label does not match feature dims");

    const std::size_t bins = xf.plane_size();
    const double T = static_cast<double>(bins);

    // Per-bin feature energy; also validates finiteness.
    std::vector<double> s_xx(bins, 0.0);
    double total_energy = 0.0;
    for (int k = 0; k < channels; ++k) {
        const Complex* xk = xf.channel(k);
        for (std::size_t t = 0; t < bins; ++t) {
            const double e = std::norm(xk[t]);
            if (!std::isfinite(e)) throw NumericError("learn_filter: non-finite features");
            s_xx[t] += e;
            total_energy += e;
        }
    }

    FilterModel model;
    model.g_hat = SpectralGrid(rows, cols, channels);
    model.model_xf = xf;
    model.filter_rows = crop.filter_rows;
    model.filter_cols = crop.filter_cols;
    model.window_rows = rows;
    model.window_cols = cols;

    if (total_energy == 0.0) {
        model.zero_energy = true;
        return model;
    }

    // Conjugate label spectrum; real-valued for the circularly-even label.
    const SpectralGrid yf = dft2(label.values);
    std::vector<Complex> yc(bins);
    for (std::size_t t = 0; t < bins; ++t) yc[t] = std::conj(yf.channel(0)[t]);

    SpectralGrid& g = model.g_hat;
    SpectralGrid h(rows, cols, channels);
    SpectralGrid dual(rows, cols, channels);
    std::vector<Complex> s_hx(bins), s_lx(bins), fac(bins), tmp(bins);

    double mu = cfg.admm_penalty_init;
    for (int iter = 0; iter < cfg.admm_iterations; ++iter) {
        // g-step: per-bin rank-one system (s_xx/T * I_outer + mu I) g = rhs,
        // solved in closed form via the Sherman-Morrison identity.
        std::fill(s_hx.begin(), s_hx.end(), Complex{0.0, 0.0});
        std::fill(s_lx.begin(), s_lx.end(), Complex{0.0, 0.0});
        for (int k = 0; k < channels; ++k) {
            const Complex* xk = xf.channel(k);
            const Complex* hk = h.channel(k);
            const Complex* lk = dual.channel(k);
            for (std::size_t t = 0; t < bins; ++t) {
                const Complex xc = std::conj(xk[t]);
                s_hx[t] += xc * hk[t];
                s_lx[t] += xc * lk[t];
            }
        }
        for (std::size_t t = 0; t < bins; ++t) {
            fac[t] = (s_xx[t] * yc[t] / T + mu * s_hx[t] - s_lx[t]) /
                     (mu * (mu * T + s_xx[t]));
        }
        for (int k = 0; k < channels; ++k) {
            const Complex* xk = xf.channel(k);
            const Complex* hk = h.channel(k);
            const Complex* lk = dual.channel(k);
            Complex* gk = g.channel(k);
            for (std::size_t t = 0; t < bins; ++t) {
                gk[t] = (xk[t] * yc[t] / T + mu * hk[t] - lk[t]) / mu - xk[t] * fac[t];
            }
        }

        // w-step: ridge-shrunk central crop of the spatial filter.
        const double shrink = T / (cfg.lambda + mu * T);
        FeatureMap w_small(crop.filter_rows, crop.filter_cols, channels);
        for (int k = 0; k < channels; ++k) {
            const Complex* gk = g.channel(k);
            const Complex* lk = dual.channel(k);
            for (std::size_t t = 0; t < bins; ++t) tmp[t] = mu * gk[t] + lk[t];
            std::vector<Complex> spatial(bins);
            ifft2(rows, cols, tmp.data(), spatial.data());
            Grid hs(rows, cols);
            for (std::size_t t = 0; t < bins; ++t) hs.values[t] = spatial[t].real() * shrink;
            const Grid small = crop.crop(hs);
            std::copy(small.values.begin(), small.values.end(), w_small.channel(k));
            const Grid padded = crop.embed(small);
            SpectralGrid hf = dft2(padded);
            std::copy(hf.channel(0), hf.channel(0) + bins, h.channel(k));
        }
        if (iterate_trace) iterate_trace->push_back(w_small);

        // Dual ascent and penalty schedule.
        for (int k = 0; k < channels; ++k) {
            const Complex* gk = g.channel(k);
            const Complex* hk = h.channel(k);
            Complex* lk = dual.channel(k);
            for (std::size_t t = 0; t < bins; ++t) lk[t] += mu * (gk[t] - hk[t]);
        }
        mu = std::min(mu * cfg.admm_penalty_scale, cfg.admm_penalty_max);
    }
    return model;
}

Grid compute_response(const FilterModel& model, const SpectralGrid& zf) {
    if (!zf.same_shape(model.g_hat))
        throw SizeError("compute_response: feature dims do not match the filter");
    const std::size_t bins = zf.plane_size();
    SpectralGrid acc(zf.rows, zf.cols, 1);
    for (int k = 0; k < zf.channels; ++k) {
        const Complex* gk = model.g_hat.channel(k);
        const Complex* zk = zf.channel(k);
        Complex* a = acc.channel(0);
        for (std::size_t t = 0; t < bins; ++t) a[t] += std::conj(gk[t]) * zk[t];
    }
    return idft2(acc, 0);
}

double eval_objective(const FeatureMap& w, const FeatureMap& features, const Grid& label,
                      double lambda) {
    const int rows = features.rows, cols = features.cols;
    if (label.rows != rows || label.cols != cols)
        throw SizeError("eval_objective: label does not match feature dims");
    if (w.channels != features.channels)
        throw SizeError("eval_objective: channel count mismatch");
    const int off_r = (rows - w.rows) / 2;
    const int off_c = (cols - w.cols) / 2;

    double objective = 0.0;
    for (int sr = 0; sr < rows; ++sr) {
        for (int sc = 0; sc < cols; ++sc) {
            double resp = 0.0;
            for (int k = 0; k < w.channels; ++k) {
                for (int fr = 0; fr < w.rows; ++fr) {
                    const int r = (off_r + fr + sr) % rows;
                    for (int fc = 0; fc < w.cols; ++fc) {
                        const int c = (off_c + fc + sc) % cols;
                        resp += w.at(fr, fc, k) * features.at(r, c, k);
                    }
                }
            }
            const double res = label.at(sr, sc) - resp;
            objective += res * res;
        }
    }
    double penalty = 0.0;
    for (double v : w.data) penalty += v * v;
    return objective + lambda * penalty;
}

}  // namespace rct
