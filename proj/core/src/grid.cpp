#include "ovalkit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "fourier.hpp"
#include "ovalkit/error.hpp"

namespace ovalkit {

using detail::signed_mode;

GridFunction::GridFunction(std::vector<double> samples) : samples_(std::move(samples)) {
    const std::size_t n = samples_.size();
    if (n < 16 || n % 2 != 0) {
        throw InvalidInput("grid size must be even and at least 16, got " + std::to_string(n));
    }
    for (double v : samples_) {
        if (!std::isfinite(v)) throw InvalidInput("grid function has non-finite samples");
    }
}

void GridFunction::require_same_size(const GridFunction& o) const {
    if (o.size() != size()) {
        throw InvalidInput("grid sizes differ (" + std::to_string(size()) + " vs " +
                           std::to_string(o.size()) + "); resample first");
    }
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double v : samples_) m = std::max(m, std::abs(v));
    return m;
}
double GridFunction::min() const { return *std::min_element(samples_.begin(), samples_.end()); }
double GridFunction::max() const { return *std::max_element(samples_.begin(), samples_.end()); }

GridFunction GridFunction::operator-() const {
    return map([](double v) { return -v; });
}
GridFunction& GridFunction::operator+=(const GridFunction& o) {
    require_same_size(o);
    for (std::size_t j = 0; j < size(); ++j) samples_[j] += o.samples_[j];
    return *this;
}
GridFunction& GridFunction::operator-=(const GridFunction& o) {
    require_same_size(o);
    for (std::size_t j = 0; j < size(); ++j) samples_[j] -= o.samples_[j];
    return *this;
}
GridFunction& GridFunction::operator*=(const GridFunction& o) {
    require_same_size(o);
    for (std::size_t j = 0; j < size(); ++j) samples_[j] *= o.samples_[j];
    return *this;
}
GridFunction& GridFunction::operator*=(double c) {
    for (double& v : samples_) v *= c;
    return *this;
}
GridFunction& GridFunction::operator+=(double c) {
    for (double& v : samples_) v += c;
    return *this;
}

double max_abs_difference(const GridFunction& a, const GridFunction& b) {
    return (a - b).max_abs();
}

GridFunction derivative(const GridFunction& f, int order) {
    if (order < 0) throw InvalidInput("derivative order must be non-negative");
    if (order == 0) return f;
    const std::size_t n = f.size();
    auto c = detail::forward(f.samples());
    const std::complex<double> i(0.0, 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        const long m = signed_mode(k, n);
        if (k == n / 2) {
            if (order % 2 == 1) {
                c[k] = 0.0;
            } else {
                const double kk = static_cast<double>(n / 2);
                c[k] *= ((order / 2) % 2 == 0 ? 1.0 : -1.0) * std::pow(kk, order);
            }
            continue;
        }
        std::complex<double> factor(1.0, 0.0);
        for (int r = 0; r < order; ++r) factor *= i * static_cast<double>(m);
        c[k] *= factor;
    }
    return GridFunction(detail::backward(c));
}

double integrate(const GridFunction& f) {
    double s = 0.0;
    for (double v : f.samples()) s += v;
    return s * f.spacing();
}

Antiderivative antiderivative(const GridFunction& f) {
    const std::size_t n = f.size();
    auto c = detail::forward(f.samples());
    const double mean = c[0].real();
    c[0] = 0.0;
    c[n / 2] = 0.0;  // sin(Nθ/2)/(N/2) vanishes on every node
    for (std::size_t k = 1; k < n; ++k) {
        if (k == n / 2) continue;
        c[k] /= std::complex<double>(0.0, static_cast<double>(signed_mode(k, n)));
    }
    std::vector<double> p = detail::backward(c);
    const double p0 = p[0];
    for (double& v : p) v -= p0;
    return {mean, GridFunction(std::move(p))};
}

double Antiderivative::at(double theta) const {
    return mean * theta + interpolate(periodic_part, theta);
}

TrigInterpolant::TrigInterpolant(const GridFunction& f)
    : samples_(f.samples().begin(), f.samples().end()) {
    const std::size_t n = samples_.size();
    const auto c = detail::forward(samples_);
    re_.resize(n / 2 + 1);
    im_.resize(n / 2 + 1);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        // Real signal: modes ±k fold into 2·Re(c_k e^{ikθ}); k = 0 and the
        // Nyquist mode (a pure cosine) appear once.
        const double w = (k == 0 || k == n / 2) ? 1.0 : 2.0;
        re_[k] = w * c[k].real();
        im_[k] = (k == n / 2) ? 0.0 : w * c[k].imag();
    }
}

namespace {

// Index of the grid node at θ, or -1 when θ is off-grid.
long node_index(double theta, std::size_t n) {
    const double x = theta / kTwoPi * static_cast<double>(n);
    const double r = std::round(x);
    if (std::abs(x - r) > 1e-11 * std::max(1.0, std::abs(x))) return -1;
    long j = static_cast<long>(r) % static_cast<long>(n);
    if (j < 0) j += static_cast<long>(n);
    return j;
}

// Calls visit(k, cos kθ, sin kθ) for k = 0..kmax using a rotation recurrence
// re-anchored every 32 steps.
template <class Visit>
void for_each_mode(double theta, std::size_t kmax, Visit&& visit) {
    const std::complex<double> step = std::polar(1.0, theta);
    std::complex<double> z(1.0, 0.0);
    for (std::size_t k = 0; k <= kmax; ++k) {
        if (k % 32 == 0) z = std::polar(1.0, static_cast<double>(k) * theta);
        visit(k, z.real(), z.imag());
        z *= step;
    }
}

}  // namespace

double TrigInterpolant::operator()(double theta) const {
    const std::size_t n = samples_.size();
    theta = std::fmod(theta, kTwoPi);
    if (theta < 0) theta += kTwoPi;
    if (const long j = node_index(theta, n); j >= 0) return samples_[static_cast<std::size_t>(j)];
    double s = 0.0;
    for_each_mode(theta, n / 2, [&](std::size_t k, double co, double si) {
        s += re_[k] * co - im_[k] * si;
    });
    return s;
}

double TrigInterpolant::derivative(double theta) const {
    const std::size_t n = samples_.size();
    theta = std::fmod(theta, kTwoPi);
    if (theta < 0) theta += kTwoPi;
    double s = 0.0;
    for_each_mode(theta, n / 2, [&](std::size_t k, double co, double si) {
        s += static_cast<double>(k) * (-re_[k] * si - im_[k] * co);
    });
    return s;
}

double interpolate(const GridFunction& f, double theta) {
    return TrigInterpolant(f)(theta);
}

GridFunction mollify(const GridFunction& f, double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidInput("mollify: eps must be > 0");
    const std::size_t n = f.size();
    const double h = f.spacing();
    // exp(-r²/2σ²) reaches 2^-53 at r = ε.
    const double sigma = eps / std::sqrt(2.0 * 53.0 * std::log(2.0));
    const long radius = std::min(static_cast<long>(std::floor(eps / h)), 4 * static_cast<long>(n));
    std::vector<double> kernel(n, 0.0);
    for (long m = -radius; m <= radius; ++m) {
        const double r = static_cast<double>(m) * h;
        long idx = m % static_cast<long>(n);
        if (idx < 0) idx += static_cast<long>(n);
        kernel[static_cast<std::size_t>(idx)] += std::exp(-r * r / (2.0 * sigma * sigma));
    }
    double mass = 0.0;
    for (double w : kernel) mass += w;
    for (double& w : kernel) w /= mass;

    std::vector<std::size_t> taps;
    for (std::size_t m = 0; m < n; ++m) {
        if (kernel[m] != 0.0) taps.push_back(m);
    }
    std::vector<double> out(n, 0.0);
    const auto s = f.samples();
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t m : taps) acc += kernel[m] * s[(j + n - m) % n];
        out[j] = acc;
    }
    return GridFunction(std::move(out));
}

GridFunction resample(const GridFunction& f, std::size_t m) {
    const std::size_t n = f.size();
    if (m == n) return f;
    if (m < 16 || m % 2 != 0) throw InvalidInput("resample: target size must be even and >= 16");
    const auto c = detail::forward(f.samples());
    detail::Spectrum d(m, 0.0);
    if (m > n) {
        for (std::size_t k = 0; k < n; ++k) {
            const long s = signed_mode(k, n);
            if (k == n / 2) {
                // Split the Nyquist cosine evenly over ±N/2.
                d[n / 2] += 0.5 * c[k];
                d[m - n / 2] += 0.5 * c[k];
                continue;
            }
            d[static_cast<std::size_t>(s >= 0 ? s : s + static_cast<long>(m))] = c[k];
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            const long s = signed_mode(k, n);
            const long half = static_cast<long>(m / 2);
            if (std::abs(s) < half) {
                d[static_cast<std::size_t>(s >= 0 ? s : s + static_cast<long>(m))] += c[k];
            } else if (std::abs(s) == half) {
                d[m / 2] += std::complex<double>(c[k].real(), 0.0);
            }
        }
    }
    return GridFunction(detail::backward(d));
}

double spectral_tail(const GridFunction& f) {
    const std::size_t n = f.size();
    const auto c = detail::forward(f.samples());
    double total = 0.0, tail = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double p = std::norm(c[k]);
        total += p;
        if (std::abs(signed_mode(k, n)) > static_cast<long>(n / 4)) tail += p;
    }
    return total > 0.0 ? std::sqrt(tail / total) : 0.0;
}

GridFunction drop_nyquist(const GridFunction& f) {
    const std::size_t n = f.size();
    double a = 0.0;
    const auto s = f.samples();
    for (std::size_t j = 0; j < n; ++j) a += (j % 2 == 0 ? 1.0 : -1.0) * s[j];
    a /= static_cast<double>(n);
    std::vector<double> out(s.begin(), s.end());
    for (std::size_t j = 0; j < n; ++j) out[j] -= (j % 2 == 0 ? a : -a);
    return GridFunction(std::move(out));
}

GridFunction antipodal(const GridFunction& f) {
    const std::size_t n = f.size();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = f[(j + n / 2) % n];
    return GridFunction(std::move(out));
}

}  // namespace ovalkit
