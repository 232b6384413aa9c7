#pragma once

#include <cstddef>
#include <vector>

#include "ovalkit/curve.hpp"
#include "ovalkit/diffeo.hpp"
#include "ovalkit/grid.hpp"

namespace ovalkit {

// Dense row-major square matrix.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> data;

    double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
};

struct SpectralResult {
    double lambda_min;
    GridFunction eigenfunction;  // ∫f² ds = 1, positive mean
    double residual;             // ‖Af - λf‖ in L²(ds)
};

// -(2π/L)²D² + diag(κ²) with the Fourier second-derivative matrix D².
// n = 0 uses the curve's grid; other sizes resample the tangent lift.
DenseMatrix operator_matrix(const DegreeOneCurve& sigma, std::size_t n = 0);

SpectralResult lowest_eigenpair(const DegreeOneCurve& sigma, std::size_t n = 0);

// The k smallest eigenvalues, ascending.
std::vector<double> lowest_eigenvalues(const DegreeOneCurve& sigma, std::size_t k,
                                       std::size_t n = 0);

// (E_S(σ, f) + (2π/L)²∫f² ds) / ∫f² ds.
double rayleigh_quotient(const DegreeOneCurve& sigma, const GridFunction& f);

struct CounterexampleOptions {
    std::size_t n = 512;          // grid of the returned curve
    std::size_t fine_n = 16384;   // grid on which the kinked slope is mollified
    BalanceOptions balance{1e-6, std::nullopt, 3};
};

struct CounterexampleResult {
    CircleDiffeo diffeo;
    DegreeOneCurve curve;
    SpectralResult spectrum;
    BalanceReport balance;
};

// Mollified ψ_τ^λ curve (L = 2π, base e₁) and its ground state.
CounterexampleResult counterexample(double tau, double lambda, double eps,
                                    const CounterexampleOptions& options = {});

}  // namespace ovalkit
