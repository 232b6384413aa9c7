#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ovalkit/grid.hpp"

namespace ovalkit {

enum class ConstraintKind { Mass, Gamma, Symmetry };

struct Constraint {
    ConstraintKind kind;
    double value = 0.0;  // γ for Gamma

    static Constraint mass() { return {ConstraintKind::Mass, kTwoPi}; }
    static Constraint gamma(double g) { return {ConstraintKind::Gamma, g}; }
    static Constraint symmetry() { return {ConstraintKind::Symmetry, 0.0}; }
};

// u = -log(A + √(A² - 1)·cos n(θ - θ₀)), A = γ/2π.
GridFunction explicit_solution(int n, double gamma, double theta0 = 0.0,
                               std::size_t grid = kDefaultGridSize);
// -2π n²/4 + (n² - 4)γ/4.
double explicit_energy(int n, double gamma);

struct Multipliers {
    double alpha;
    double beta;
};
// α = -n²/4, β = αγ/2π: the values that make the explicit family solve the ODE.
Multipliers proof_multipliers(int n, double gamma);
// α = -n², β = -(γ/2π)n²: the values as printed in the proposition.
Multipliers statement_multipliers(int n, double gamma);

struct ElFit {
    double alpha;
    double beta;
    double residual;  // L² norm of ¼u'' - αe^{2u} + βe^u
};
// Least-squares (α, β). When e^u and e^{2u} are collinear (u constant) the
// fit is α = β = -1, the multiplier of the mass-only problem.
ElFit el_residual(const GridFunction& u);
double el_residual_at(const GridFunction& u, double alpha, double beta);

struct Conservation {
    double variance;  // of η = ¼(u')² - αe^{2u} + 2βe^u over the grid
    double mean;
};
Conservation conservation_check(const GridFunction& u, double alpha, double beta);

// L² gradient of E: -½u'' - 2e^{2u}.
GridFunction energy_gradient(const GridFunction& u);

enum class Metric {
    L2,       // plain projected gradient
    Sobolev,  // gradient preconditioned by (1 - ½∂²)⁻¹
};

struct MinimizeOptions {
    double step = 0.1;
    double tol = 1e-8;
    std::size_t max_iter = 50000;
    double backtrack = 0.5;
    Metric metric = Metric::Sobolev;
};

struct TraceEntry {
    std::size_t iteration;
    double energy;
    double gradient_norm;
};

struct MinimizeResult {
    GridFunction u_star;
    double energy;
    double alpha;
    double beta;
    double el_residual;
    double eta_variance;
    double eta_mean;
    std::size_t iterations;
    double gradient_norm;  // L² norm of the L²-projected gradient
    bool converged;
    std::vector<TraceEntry> trace;
};

MinimizeResult minimize(const GridFunction& u0, const std::vector<Constraint>& constraints,
                        const MinimizeOptions& options = {});

// Projects u onto the constraint set (symmetry average, mass shift, γ solve).
GridFunction enforce_constraints(const GridFunction& u, const std::vector<Constraint>& constraints);

struct CriticalPointMatch {
    int n;           // 0 for u ≡ 0
    double theta0;
    double distance;  // sup-norm distance to explicit_solution(n, γ, θ₀)
};
CriticalPointMatch classify_critical_point(const GridFunction& u);

struct LowerBoundOptions {
    std::size_t grid = kDefaultGridSize;
    bool symmetric = true;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    MinimizeOptions minimize{};
};

struct LowerBoundTrial {
    double energy;
    double el_residual;
    bool converged;
    CriticalPointMatch match;
};

struct LowerBoundReport {
    double gamma;
    double min_energy;
    std::vector<LowerBoundTrial> trials;
};

// Minimizes E from random starts under {mass, γ} (and symmetry unless
// disabled). Trial i uses seed + i, so results do not depend on threads.
LowerBoundReport energy_lower_bound_experiment(double gamma, std::size_t trials,
                                               const LowerBoundOptions& options = {});

}  // namespace ovalkit
