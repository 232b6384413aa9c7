#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ovalkit/diffeo.hpp"
#include "ovalkit/grid.hpp"

namespace ovalkit {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Degree-one curve σ(t) = X + (L/2π)∫₀ᵗ (cos a, sin a) dx with tangent angle
// a(x) = x + p(x), p periodic with p(0) ∈ [-π, π). Positions are always derived,
// never stored.
class DegreeOneCurve {
public:
    static DegreeOneCurve from_tangent_lift(GridFunction periodic_part, Vec2 base_point,
                                            double length);

    const GridFunction& angle_periodic() const { return p_; }
    // a(x_j) on the grid nodes.
    std::vector<double> tangent_angle() const;
    // a' = 1 + p'.
    GridFunction turning_rate() const;
    Vec2 base_point() const { return base_; }
    double length() const { return length_; }
    std::size_t size() const { return p_.size(); }
    bool strictly_convex() const;

private:
    DegreeOneCurve(GridFunction p, Vec2 base, double length)
        : p_(std::move(p)), base_(base), length_(length) {}
    GridFunction p_;
    Vec2 base_;
    double length_;
};

// Tangent angle a = φ + π/2, so that T_σ = T₀∘φ.
DegreeOneCurve from_diffeo(const CircleDiffeo& phi, Vec2 base_point = {1.0, 0.0},
                           double length = kTwoPi);
// Curvature samples κ(x); rescaled so that ∫κ ds = 2π.
DegreeOneCurve from_curvature(const GridFunction& kappa, Vec2 base_point = {1.0, 0.0},
                              double length = kTwoPi);

std::vector<Vec2> positions(const DegreeOneCurve& sigma, std::span<const double> t);
double closure_defect(const DegreeOneCurve& sigma);
// κ = (2π/L)·a' as a function of the grid parameter.
GridFunction curvature(const DegreeOneCurve& sigma);

// φ_σ = a - π/2; requires strict convexity.
CircleDiffeo induced_diffeo(const DegreeOneCurve& sigma);

DegreeOneCurve dual(const DegreeOneCurve& sigma);

// Same curve scaled about the origin: X ↦ cX, L ↦ cL.
DegreeOneCurve scaled(const DegreeOneCurve& sigma, double c);
// Same tangent map, moved base point.
DegreeOneCurve with_base_point(const DegreeOneCurve& sigma, Vec2 base_point);
// Fourier resampling of the tangent lift.
DegreeOneCurve resample(const DegreeOneCurve& sigma, std::size_t n);

inline constexpr double kMobiusTolerance = 1e-6;

// Tangent angle a∘φ. φ must be Möbius within tol.
DegreeOneCurve act_right(const DegreeOneCurve& sigma, const CircleDiffeo& phi,
                         double tol = kMobiusTolerance);
DegreeOneCurve act_right(const DegreeOneCurve& sigma, const MobiusElement& m);
DegreeOneCurve act_right_unchecked(const DegreeOneCurve& sigma, const CircleDiffeo& phi);

// Induced diffeo φ∘φ_σ. σ strictly convex, φ Möbius within tol.
DegreeOneCurve act_left(const CircleDiffeo& phi, const DegreeOneCurve& sigma,
                        double tol = kMobiusTolerance);
DegreeOneCurve act_left(const MobiusElement& m, const DegreeOneCurve& sigma);
DegreeOneCurve act_left_unchecked(const CircleDiffeo& phi, const DegreeOneCurve& sigma);

// Weight -1/2 density on the circle.
struct DensityHalf {
    GridFunction values;
};

// (φ')^{-1/2}·f∘φ.
DensityHalf act_density(const DensityHalf& f, const CircleDiffeo& phi);

}  // namespace ovalkit
