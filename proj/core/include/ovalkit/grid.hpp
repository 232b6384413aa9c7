#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ovalkit {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr std::size_t kDefaultGridSize = 256;

// Samples f(2πj/N), j = 0..N-1, of a 2π-periodic real function. N is even and
// at least 16. Immutable once built.
class GridFunction {
public:
    explicit GridFunction(std::vector<double> samples);

    template <class F>
    static GridFunction sample(std::size_t n, F&& f) {
        std::vector<double> s(n);
        for (std::size_t j = 0; j < n; ++j) s[j] = f(node(n, j));
        return GridFunction(std::move(s));
    }
    static GridFunction constant(std::size_t n, double c) {
        return GridFunction(std::vector<double>(n, c));
    }

    static double node(std::size_t n, std::size_t j) {
        return kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    }
    double node(std::size_t j) const { return node(size(), j); }
    double spacing() const { return kTwoPi / static_cast<double>(size()); }

    std::size_t size() const { return samples_.size(); }
    double operator[](std::size_t j) const { return samples_[j]; }
    std::span<const double> samples() const { return samples_; }

    template <class F>
    GridFunction map(F&& f) const {
        std::vector<double> s(samples_.size());
        for (std::size_t j = 0; j < s.size(); ++j) s[j] = f(samples_[j]);
        return GridFunction(std::move(s));
    }

    double max_abs() const;
    double min() const;
    double max() const;

    GridFunction operator-() const;
    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(const GridFunction& o);
    GridFunction& operator*=(double c);
    GridFunction& operator+=(double c);

private:
    void require_same_size(const GridFunction& o) const;
    std::vector<double> samples_;
};

inline GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
inline GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
inline GridFunction operator*(GridFunction a, const GridFunction& b) { return a *= b; }
inline GridFunction operator*(GridFunction a, double c) { return a *= c; }
inline GridFunction operator*(double c, GridFunction a) { return a *= c; }
inline GridFunction operator+(GridFunction a, double c) { return a += c; }
inline GridFunction operator-(GridFunction a, double c) { return a += -c; }

double max_abs_difference(const GridFunction& a, const GridFunction& b);

// Fourier derivative of the given order. Odd orders drop the Nyquist mode
// (its derivative is not representable); even orders keep it.
GridFunction derivative(const GridFunction& f, int order = 1);

// Trapezoid rule: (2π/N) Σ f_j.
double integrate(const GridFunction& f);

// F(θ) = mean·θ + periodic_part(θ) with F(0) = 0 and F' = f.
struct Antiderivative {
    double mean;
    GridFunction periodic_part;

    double at(double theta) const;
};
Antiderivative antiderivative(const GridFunction& f);

// Band-limited interpolation, θ taken mod 2π, exact at nodes.
double interpolate(const GridFunction& f, double theta);

// Precomputed Fourier coefficients for repeated interpolation of one function.
class TrigInterpolant {
public:
    explicit TrigInterpolant(const GridFunction& f);
    double operator()(double theta) const;
    // Derivative of the interpolant (Nyquist treated as cos(Nθ/2)).
    double derivative(double theta) const;
    std::size_t size() const { return samples_.size(); }

private:
    std::vector<double> samples_;
    std::vector<double> re_, im_;  // c_k for k = 0..N/2
};

// Periodic convolution with a unit-mass Gaussian truncated at radius ε, where
// the kernel has decayed to machine precision.
GridFunction mollify(const GridFunction& f, double eps);

// Fourier resampling to m points (zero padding or truncation).
GridFunction resample(const GridFunction& f, std::size_t m);

// Relative L² weight of the modes with |k| > N/4.
double spectral_tail(const GridFunction& f);

// Removes the Nyquist mode cos(Nθ/2).
GridFunction drop_nyquist(const GridFunction& f);

// f∘I with I(θ) = θ + π: an exact shift by N/2 samples.
GridFunction antipodal(const GridFunction& f);

}  // namespace ovalkit
