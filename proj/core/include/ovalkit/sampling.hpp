#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "ovalkit/curve.hpp"
#include "ovalkit/diffeo.hpp"
#include "ovalkit/grid.hpp"

namespace ovalkit {

using Rng = std::mt19937_64;

struct TrigPolynomialOptions {
    int degree = 8;
    double amplitude = 0.3;  // mode k gets amplitude/k
    bool even_modes_only = false;
};

// Σ_{k=1}^{degree} (a_k cos kθ + b_k sin kθ) with Gaussian coefficients.
GridFunction random_trig_polynomial(Rng& rng, std::size_t n, const TrigPolynomialOptions& opt = {});

CircleDiffeo random_diffeo(Rng& rng, std::size_t n, const TrigPolynomialOptions& opt = {});

// Entries uniform in [-2, 2], renormalized to det 1; draws with a singular
// value above max_singular are rejected so that Γ(L) stays resolved.
MobiusElement random_mobius(Rng& rng, double max_singular = 2.5);

// Closed strictly convex curve. The radius of curvature as a function of the
// tangent angle is exp(trig polynomial), with its first Fourier modes fixed by
// Newton so that ∫ρ(y)(cos y, sin y) dy = 0, which is exactly closure.
DegreeOneCurve random_closed_convex_curve(Rng& rng, std::size_t n,
                                          const TrigPolynomialOptions& opt = {},
                                          Vec2 base_point = {1.0, 0.0}, double length = kTwoPi);

}  // namespace ovalkit
