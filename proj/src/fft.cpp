#include "rct/fft.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include <fftw3.h>

#include "rct/errors.hpp"

namespace rct {
namespace {

// FFTW plan creation is not thread-safe; execution via fftw_execute_dft is.
// Plans are created with FFTW_UNALIGNED so they can run on any buffer.
std::mutex g_plan_mutex;
std::map<std::tuple<int, int, int>, fftw_plan> g_plans;

fftw_plan get_plan(int rows, int cols, int sign) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    const auto key = std::make_tuple(rows, cols, sign);
    auto it = g_plans.find(key);
    if (it != g_plans.end()) return it->second;

    std::vector<Complex> a(static_cast<std::size_t>(rows) * cols);
    std::vector<Complex> b(a.size());
    fftw_plan plan = fftw_plan_dft_2d(rows, cols, reinterpret_cast<fftw_complex*>(a.data()),
                                      reinterpret_cast<fftw_complex*>(b.data()), sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw NumericError("fftw plan creation failed");
    g_plans.emplace(key, plan);
    return plan;
}

void execute(int rows, int cols, int sign, const Complex* in, Complex* out) {
    if (rows < 1 || cols < 1) throw SizeError("fft2: empty grid");
    fftw_plan plan = get_plan(rows, cols, sign);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void fft2(int rows, int cols, const Complex* in, Complex* out) {
    execute(rows, cols, FFTW_FORWARD, in, out);
}

void ifft2(int rows, int cols, const Complex* in, Complex* out) {
    execute(rows, cols, FFTW_BACKWARD, in, out);
    const double scale = 1.0 / (static_cast<double>(rows) * cols);
    const std::size_t n = static_cast<std::size_t>(rows) * cols;
    for (std::size_t i = 0; i < n; ++i) out[i] *= scale;
}

SpectralGrid dft2(const Grid& grid) {
    SpectralGrid out(grid.rows, grid.cols, 1);
    std::vector<Complex> in(grid.size());
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = Complex{grid.values[i], 0.0};
    fft2(grid.rows, grid.cols, in.data(), out.channel(0));
    return out;
}

SpectralGrid dft2(const FeatureMap& features) {
    SpectralGrid out(features.rows, features.cols, features.channels);
    std::vector<Complex> in(features.rows * static_cast<std::size_t>(features.cols));
    for (int k = 0; k < features.channels; ++k) {
        const double* src = features.channel(k);
        for (std::size_t i = 0; i < in.size(); ++i) in[i] = Complex{src[i], 0.0};
        fft2(features.rows, features.cols, in.data(), out.channel(k));
    }
    return out;
}

Grid idft2(const SpectralGrid& spectrum, int channel) {
    std::vector<Complex> tmp = idft2_complex(spectrum, channel);
    Grid out(spectrum.rows, spectrum.cols);
    for (std::size_t i = 0; i < tmp.size(); ++i) out.values[i] = tmp[i].real();
    return out;
}

std::vector<Complex> idft2_complex(const SpectralGrid& spectrum, int channel) {
    std::vector<Complex> out(spectrum.plane_size());
    ifft2(spectrum.rows, spectrum.cols, spectrum.channel(channel), out.data());
    return out;
}

}  // namespace rct
