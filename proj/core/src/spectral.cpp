#include "ovalkit/spectral.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "ovalkit/error.hpp"
#include "ovalkit/functionals.hpp"

namespace ovalkit {

namespace {

DegreeOneCurve on_grid(const DegreeOneCurve& sigma, std::size_t n) {
    return (n == 0 || n == sigma.size()) ? sigma : resample(sigma, n);
}

Eigen::MatrixXd assemble(const DegreeOneCurve& sigma) {
    const std::size_t n = sigma.size();
    const double h = kTwoPi / static_cast<double>(n);
    const double r = kTwoPi / sigma.length();
    const GridFunction k = curvature(sigma);
    // Periodic Fourier second-derivative matrix for even n.
    std::vector<double> col(n);
    col[0] = -kPi * kPi / (3.0 * h * h) - 1.0 / 6.0;
    for (std::size_t m = 1; m < n; ++m) {
        const double s = std::sin(0.5 * static_cast<double>(m) * h);
        col[m] = -0.5 * (m % 2 == 0 ? 1.0 : -1.0) / (s * s);
    }
    Eigen::MatrixXd a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = -r * r * col[i > j ? i - j : j - i];
        }
        a(i, i) += k[i] * k[i];
    }
    return a;
}

}  // namespace

DenseMatrix operator_matrix(const DegreeOneCurve& sigma, std::size_t n) {
    const Eigen::MatrixXd a = assemble(on_grid(sigma, n));
    DenseMatrix out{static_cast<std::size_t>(a.rows()), {}};
    out.data.resize(out.n * out.n);
    for (std::size_t i = 0; i < out.n; ++i) {
        for (std::size_t j = 0; j < out.n; ++j) out(i, j) = a(i, j);
    }
    return out;
}

std::vector<double> lowest_eigenvalues(const DegreeOneCurve& sigma, std::size_t k, std::size_t n) {
    const Eigen::MatrixXd a = assemble(on_grid(sigma, n));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    std::vector<double> out;
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(static_cast<Eigen::Index>(k), ev.size()); ++i) {
        out.push_back(ev(i));
    }
    return out;
}

SpectralResult lowest_eigenpair(const DegreeOneCurve& sigma_in, std::size_t n) {
    const DegreeOneCurve sigma = on_grid(sigma_in, n);
    const Eigen::MatrixXd a = assemble(sigma);
    const Eigen::Index m = a.rows();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    double lambda = es.eigenvalues()(0);

    // Inverse iteration with a shift just below the ground state; A - sI is
    // then positive definite and the iteration converges in a few steps.
    const double shift = lambda - 1e-7 * (1.0 + std::abs(lambda));
    Eigen::MatrixXd b = a;
    b.diagonal().array() -= shift;
    const Eigen::LLT<Eigen::MatrixXd> llt(b);
    if (llt.info() != Eigen::Success) throw PreconditionError("ground-state shift is not definite");
    Eigen::VectorXd v = Eigen::VectorXd::Ones(m);
    for (int it = 0; it < 8; ++it) {
        v = llt.solve(v);
        v.normalize();
    }
    lambda = v.dot(a * v);
    const Eigen::VectorXd res = a * v - lambda * v;

    // Scale to ∫f² ds = (L/N)Σf² = 1 with positive orientation.
    const double ds_weight = sigma.length() / static_cast<double>(m);
    const double scale = (v.sum() < 0 ? -1.0 : 1.0) / std::sqrt(ds_weight);
    std::vector<double> f(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) f[static_cast<std::size_t>(i)] = scale * v(i);
    return {lambda, GridFunction(std::move(f)), res.norm()};
}

double rayleigh_quotient(const DegreeOneCurve& sigma, const GridFunction& f) {
    const double r = kTwoPi / sigma.length();
    const double norm2 = sigma.length() / kTwoPi * integrate(f * f);
    return (energy_S(sigma, f).total + r * r * norm2) / norm2;
}

CounterexampleResult counterexample(double tau, double lambda, double eps,
                                    const CounterexampleOptions& options) {
    if (tau == 0.0 || !std::isfinite(tau)) {
        throw PreconditionError("counterexample needs tau != 0 (tau = 0 gives an oval half)");
    }
    if (!(lambda > 1.0)) throw PreconditionError("counterexample needs lambda > 1");
    if (!(eps > 0.0)) throw InvalidInput("counterexample needs eps > 0");
    const CircleDiffeo phi =
        mollified_family(Family::PsiTauLambda, {lambda, tau}, eps, options.n, options.fine_n);
    const DegreeOneCurve curve = from_diffeo(phi, {1.0, 0.0}, kTwoPi);
    return {phi, curve, lowest_eigenpair(curve), balance_points(phi, options.balance)};
}

}  // namespace ovalkit
