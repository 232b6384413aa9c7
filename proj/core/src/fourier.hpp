#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ovalkit::detail {

using Spectrum = std::vector<std::complex<double>>;

// c_k = (1/N) Σ_j f_j e^{-ikθ_j}, k = 0..N-1 (index k ≥ N/2 holds mode k - N).
Spectrum forward(std::span<const double> f);

// Real part of Σ_k c_k e^{ikθ_j}.
std::vector<double> backward(const Spectrum& c);

inline long signed_mode(std::size_t k, std::size_t n) {
    return k <= n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

}  // namespace ovalkit::detail
