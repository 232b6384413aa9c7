#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "ovalkit/grid.hpp"

namespace ovalkit {

// Orientation-preserving circle diffeomorphism stored by its log-slope
// u = log φ' (normalized so that ∫e^u = 2π) and offset φ(0) ∈ [0, 2π).
// Evaluation returns the continuous lift: φ(θ + 2π) = φ(θ) + 2π.
class CircleDiffeo {
public:
    static CircleDiffeo from_log_slope(const GridFunction& u, double offset = 0.0);
    static CircleDiffeo identity(std::size_t n = kDefaultGridSize);
    static CircleDiffeo rotation(double rho, std::size_t n = kDefaultGridSize);

    const GridFunction& log_slope() const { return u_; }
    GridFunction slope() const;
    double offset() const { return offset_; }
    std::size_t size() const { return u_.size(); }

    double operator()(double theta) const;
    // Derivative of the interpolated lift.
    double slope_at(double theta) const;
    double log_slope_at(double theta) const;
    // φ(θ_j) on the grid nodes (lifted, no interpolation).
    std::vector<double> node_values() const;

private:
    struct Cache;
    CircleDiffeo(GridFunction u, double offset);
    GridFunction u_;
    double offset_;
    std::shared_ptr<const Cache> cache_;
};

inline double evaluate(const CircleDiffeo& phi, double theta) { return phi(theta); }

// |a - b| measured on the circle, in [0, π].
double circle_distance(double a, double b);

// Largest circle distance between φ and ψ on m equispaced points, offset by
// half a cell so that no point is a grid node.
double sup_distance(const CircleDiffeo& phi, const CircleDiffeo& psi, std::size_t m = 64);

CircleDiffeo compose(const CircleDiffeo& phi, const CircleDiffeo& psi);
CircleDiffeo invert(const CircleDiffeo& phi);

struct SchwarzianResult {
    GridFunction value;
    double tail;  // spectral tail of u
    bool resolved;
};
// S(φ) = u'' - ½(u')².
SchwarzianResult schwarzian(const CircleDiffeo& phi, double tail_tol = 1e-8);

// max |S(φ∘ψ) - S(φ)∘ψ·(ψ')² - S(ψ)|.
double cocycle_defect(const CircleDiffeo& phi, const CircleDiffeo& psi);

// S(φ) + 2(φ')² - 2; vanishes exactly on Möbius diffeos.
GridFunction mobius_defect(const CircleDiffeo& phi);

// Element of SL(2,ℝ).
class MobiusElement {
public:
    MobiusElement() = default;
    // Divides by √det; rejects det ≤ 0.
    static MobiusElement normalized(double a, double b, double c, double d);
    static MobiusElement rotation(double rho);
    static MobiusElement diagonal(double s);

    double a() const { return m_[0]; }
    double b() const { return m_[1]; }
    double c() const { return m_[2]; }
    double d() const { return m_[3]; }
    double determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
    std::array<double, 4> entries() const { return m_; }

    MobiusElement operator*(const MobiusElement& o) const;
    MobiusElement inverse() const;
    std::array<double, 2> apply(double x, double y) const {
        return {m_[0] * x + m_[1] * y, m_[2] * x + m_[3] * y};
    }

private:
    explicit MobiusElement(std::array<double, 4> m) : m_(m) {}
    std::array<double, 4> m_{1.0, 0.0, 0.0, 1.0};
};

// Γ(L): x ↦ Lx/|Lx| with slope 1/|L(cos θ, sin θ)|².
CircleDiffeo mobius_diffeo(const MobiusElement& m, std::size_t n = kDefaultGridSize);

// (aτ + b)/(cτ + d); throws PoleError at cτ + d = 0.
double frac_linear(const MobiusElement& m, double tau);
// Same map on ℝP¹ in the angle coordinate ϑ ∈ [0, π), τ = cot ϑ. Total.
double frac_linear_angle(const MobiusElement& m, double vartheta);

enum class Family { PhiLambda, PsiTau, PsiTauLambda };

struct FamilyParams {
    double lambda = 1.0;
    double tau = 0.0;
};

CircleDiffeo make_family(Family kind, FamilyParams params, std::size_t n = kDefaultGridSize);

// Closed forms of the families (continuous lifts and slopes).
namespace closed_form {
double phi_lambda(double lambda, double theta);
double phi_lambda_slope(double lambda, double theta);
// Identity off [π/2, 3π/2]; cot⁻¹(τ + cot(θ - π/2)) + π/2 on it.
double psi_tau(double tau, double theta);
double psi_tau_slope(double tau, double theta);
// φ_{1/λ} ∘ ψ_τ ∘ φ_λ.
double psi_tau_lambda(double tau, double lambda, double theta);
double psi_tau_lambda_slope(double tau, double lambda, double theta);
}  // namespace closed_form

struct BalancePoint {
    double theta;
    bool stable;
};

struct BalanceArc {
    double begin;  // node angles bounding a run of nodes where g and Δu vanish
    double end;
    std::size_t nodes;
};

struct BalanceOptions {
    // Root tolerance; the saturation threshold is tol·(1 + max|φ|).
    double tol = 1e-9;
    // A balance point p is stable when |u(p) - u(p + π)| exceeds this. Unset:
    // 1e-6 when u is spectrally resolved, 1e-2 for kinked data, whose
    // interpolated log-slope is only accurate to O(h²) near the kinks.
    std::optional<double> stability_tol;
    // Runs of at least this many consecutive nodes with |g| and |Δu| below
    // the saturation threshold mark a balancing arc.
    std::size_t arc_nodes = 3;
};

struct BalanceReport {
    std::vector<BalancePoint> points;  // sorted, antipodal pairs
    std::optional<std::size_t> n_B;    // nullopt: saturated (n_B = ∞)
    std::size_t n_SB;                  // isolated stable points
    double max_defect;                 // max |g| on the grid
    bool saturated;
    std::vector<BalanceArc> arcs;
};

// Zeros of g(θ) = φ(θ + π) - φ(θ) - π.
BalanceReport balance_points(const CircleDiffeo& phi, const BalanceOptions& options = {});

double balance_defect(const CircleDiffeo& phi, double theta);

struct SymmetrizeResult {
    CircleDiffeo diffeo;     // commutes with the antipodal map
    double energy;           // E[ũ] of the output; ≈ 2·min(half energies)
    double half_energy[2];   // ∫ ¼(u')² - e^{2u} over [p₀, p₀+π] and [p₀+π, p₀+2π]
    int kept_half;           // index of the doubled half
};

// Reflects the lower-energy half of φ across the balance point p₀. Half energies
// within tol (relative) count as tied; the half with smaller ∫e^{2u} then wins.
SymmetrizeResult symmetrize(const CircleDiffeo& phi, double p0, double tol = 1e-6);

}  // namespace ovalkit
