#pragma once

#include <complex>
#include <vector>

#include "rct/grid.hpp"

namespace rct {

using Complex = std::complex<double>;

/// Frequency-domain counterpart of a FeatureMap: one complex rows*cols
/// plane per channel. Forward transform is unnormalized, the inverse
/// carries the 1/(rows*cols) factor.
struct SpectralGrid {
    int rows = 0;
    int cols = 0;
    int channels = 0;
    std::vector<Complex> data;

    SpectralGrid() = default;
    SpectralGrid(int r, int c, int k)
        : rows(r), cols(c), channels(k),
          data(static_cast<std::size_t>(r) * c * k, Complex{0.0, 0.0}) {}

    Complex* channel(int k) { return data.data() + static_cast<std::size_t>(k) * rows * cols; }
    const Complex* channel(int k) const {
        return data.data() + static_cast<std::size_t>(k) * rows * cols;
    }
    std::size_t plane_size() const { return static_cast<std::size_t>(rows) * cols; }
    bool same_shape(const SpectralGrid& o) const {
        return rows == o.rows && cols == o.cols && channels == o.channels;
    }
};

/// 2-D complex DFT of one plane, out-of-place. Thread-safe.
void fft2(int rows, int cols, const Complex* in, Complex* out);
void ifft2(int rows, int cols, const Complex* in, Complex* out);

SpectralGrid dft2(const Grid& grid);
SpectralGrid dft2(const FeatureMap& features);

/// Real part of the inverse transform of one channel.
Grid idft2(const SpectralGrid& spectrum, int channel = 0);

/// Full complex inverse of one channel (for residue checks).
std::vector<Complex> idft2_complex(const SpectralGrid& spectrum, int channel = 0);

}  // namespace rct
