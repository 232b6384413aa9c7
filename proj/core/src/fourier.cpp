#include "fourier.hpp"

#include <unsupported/Eigen/FFT>

namespace ovalkit::detail {

namespace {
Eigen::FFT<double>& engine() {
    // kissfft plans are cached per instance; one instance per thread keeps
    // concurrent callers independent.
    thread_local Eigen::FFT<double> fft;
    return fft;
}
}  // namespace

Spectrum forward(std::span<const double> f) {
    const std::size_t n = f.size();
    Spectrum in(n), out(n);
    for (std::size_t j = 0; j < n; ++j) in[j] = f[j];
    engine().fwd(out, in);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& c : out) c *= inv_n;
    return out;
}

std::vector<double> backward(const Spectrum& c) {
    const std::size_t n = c.size();
    Spectrum out(n);
    engine().inv(out, c);  // scaled by 1/N
    std::vector<double> f(n);
    for (std::size_t j = 0; j < n; ++j) f[j] = out[j].real() * static_cast<double>(n);
    return f;
}

}  // namespace ovalkit::detail
