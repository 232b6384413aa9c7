#include "ovalkit/diffeo.hpp"

#include <algorithm>
#include <cmath>

#include "ovalkit/error.hpp"

namespace ovalkit {

struct CircleDiffeo::Cache {
    double mean;  // of e^u; 1 up to rounding
    TrigInterpolant periodic;
    TrigInterpolant u;
    GridFunction periodic_samples;
};

CircleDiffeo::CircleDiffeo(GridFunction u, double offset) : u_(std::move(u)), offset_(offset) {
    const GridFunction s = slope();
    Antiderivative f = antiderivative(s);
    cache_ = std::make_shared<const Cache>(
        Cache{f.mean, TrigInterpolant(f.periodic_part), TrigInterpolant(u_), f.periodic_part});
}

CircleDiffeo CircleDiffeo::from_log_slope(const GridFunction& u, double offset) {
    if (!std::isfinite(offset)) throw InvalidInput("diffeo offset must be finite");
    const double mass = integrate(u.map([](double v) { return std::exp(v); }));
    if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidInput("log-slope overflows");
    GridFunction shifted = u + std::log(kTwoPi / mass);
    double off = std::fmod(offset, kTwoPi);
    if (off < 0) off += kTwoPi;
    if (off >= kTwoPi) off = 0.0;
    return CircleDiffeo(std::move(shifted), off);
}

CircleDiffeo CircleDiffeo::identity(std::size_t n) {
    return from_log_slope(GridFunction::constant(n, 0.0), 0.0);
}

CircleDiffeo CircleDiffeo::rotation(double rho, std::size_t n) {
    return from_log_slope(GridFunction::constant(n, 0.0), rho);
}

GridFunction CircleDiffeo::slope() const {
    return u_.map([](double v) { return std::exp(v); });
}

double CircleDiffeo::operator()(double theta) const {
    return offset_ + cache_->mean * theta + cache_->periodic(theta);
}

double CircleDiffeo::slope_at(double theta) const {
    return cache_->mean + cache_->periodic.derivative(theta);
}

double CircleDiffeo::log_slope_at(double theta) const { return cache_->u(theta); }

std::vector<double> CircleDiffeo::node_values() const {
    std::vector<double> out(size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double t = u_.node(j);
        out[j] = offset_ + cache_->mean * t + cache_->periodic_samples[j];
    }
    return out;
}

double circle_distance(double a, double b) {
    return std::abs(std::remainder(a - b, kTwoPi));
}

double sup_distance(const CircleDiffeo& phi, const CircleDiffeo& psi, std::size_t m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double t = kTwoPi * (static_cast<double>(i) + 0.5) / static_cast<double>(m);
        worst = std::max(worst, circle_distance(phi(t), psi(t)));
    }
    return worst;
}

CircleDiffeo compose(const CircleDiffeo& phi, const CircleDiffeo& psi) {
    if (phi.size() != psi.size()) throw InvalidInput("compose: grid sizes differ");
    const std::size_t n = psi.size();
    const std::vector<double> inner = psi.node_values();
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) {
        u[j] = phi.log_slope_at(inner[j]) + psi.log_slope()[j];
    }
    return CircleDiffeo::from_log_slope(GridFunction(std::move(u)), phi(psi.offset()));
}

namespace {

// Solves φ(x) = target for x in [lo, hi] (φ(lo) ≤ target ≤ φ(hi)) by a few
// bisection steps followed by safeguarded Newton.
double solve_monotone(const CircleDiffeo& phi, double target, double lo, double hi) {
    for (int i = 0; i < 8; ++i) {
        const double mid = 0.5 * (lo + hi);
        (phi(mid) < target ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 60; ++i) {
        const double f = phi(x) - target;
        if (f == 0.0) return x;
        (f < 0.0 ? lo : hi) = x;
        const double d = phi.slope_at(x);
        double next = x - f / d;
        if (!(next > lo && next < hi) || !(d > 0.0)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-15 * (1.0 + std::abs(x))) return next;
        x = next;
        if (hi - lo <= 4e-16 * (1.0 + std::abs(x))) return x;
    }
    return x;
}

}  // namespace

CircleDiffeo invert(const CircleDiffeo& phi) {
    const std::size_t n = phi.size();
    // φ(0) = offset ∈ [0, 2π), so φ(x₀) = 2π has a root x₀ ∈ [0, 2π]; it is
    // the offset of the inverse.
    const double x0 = solve_monotone(phi, kTwoPi, 0.0, kTwoPi);
    std::vector<double> u(n);
    double prev = x0;
    for (std::size_t j = 0; j < n; ++j) {
        const double target = kTwoPi + GridFunction::node(n, j);
        const double x = j == 0 ? x0 : solve_monotone(phi, target, prev, x0 + kTwoPi);
        u[j] = -phi.log_slope_at(x);
        prev = x;
    }
    return CircleDiffeo::from_log_slope(GridFunction(std::move(u)), x0);
}

SchwarzianResult schwarzian(const CircleDiffeo& phi, double tail_tol) {
    const GridFunction& u = phi.log_slope();
    const GridFunction du = derivative(u);
    const GridFunction s = derivative(u, 2) - 0.5 * (du * du);
    const double tail = spectral_tail(u);
    return {s, tail, tail < tail_tol};
}

double cocycle_defect(const CircleDiffeo& phi, const CircleDiffeo& psi) {
    const GridFunction s_comp = schwarzian(compose(phi, psi)).value;
    const GridFunction s_phi = schwarzian(phi).value;
    const GridFunction s_psi = schwarzian(psi).value;
    const TrigInterpolant s_phi_at(s_phi);
    const std::vector<double> inner = psi.node_values();
    double worst = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
        const double dpsi = std::exp(psi.log_slope()[j]);
        const double r = s_comp[j] - s_phi_at(inner[j]) * dpsi * dpsi - s_psi[j];
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

GridFunction mobius_defect(const CircleDiffeo& phi) {
    const GridFunction e2u = phi.log_slope().map([](double v) { return std::exp(2.0 * v); });
    return schwarzian(phi).value + 2.0 * e2u - 2.0;
}

MobiusElement MobiusElement::normalized(double a, double b, double c, double d) {
    const double det = a * d - b * c;
    if (!std::isfinite(det)) throw InvalidInput("Mobius matrix entries must be finite");
    if (!(det > 0.0)) throw InvalidInput("Mobius matrix must have positive determinant");
    const double r = 1.0 / std::sqrt(det);
    return MobiusElement({a * r, b * r, c * r, d * r});
}

MobiusElement MobiusElement::rotation(double rho) {
    return MobiusElement({std::cos(rho), -std::sin(rho), std::sin(rho), std::cos(rho)});
}

MobiusElement MobiusElement::diagonal(double s) {
    if (!(s > 0.0)) throw InvalidInput("diagonal Mobius element needs s > 0");
    return MobiusElement({s, 0.0, 0.0, 1.0 / s});
}

MobiusElement MobiusElement::operator*(const MobiusElement& o) const {
    const auto& x = m_;
    const auto& y = o.m_;
    return MobiusElement({x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]});
}

MobiusElement MobiusElement::inverse() const {
    const double det = determinant();
    return MobiusElement({m_[3] / det, -m_[1] / det, -m_[2] / det, m_[0] / det});
}

CircleDiffeo mobius_diffeo(const MobiusElement& m, std::size_t n) {
    const GridFunction u = GridFunction::sample(n, [&](double t) {
        const auto v = m.apply(std::cos(t), std::sin(t));
        return -std::log(v[0] * v[0] + v[1] * v[1]);
    });
    return CircleDiffeo::from_log_slope(u, std::atan2(m.c(), m.a()));
}

double frac_linear(const MobiusElement& m, double tau) {
    const double den = m.c() * tau + m.d();
    if (den == 0.0) throw PoleError("fractional linear map evaluated at its pole");
    const double r = (m.a() * tau + m.b()) / den;
    if (!std::isfinite(r)) throw PoleError("fractional linear map evaluated at its pole");
    return r;
}

double frac_linear_angle(const MobiusElement& m, double vartheta) {
    const auto v = m.apply(std::cos(vartheta), std::sin(vartheta));
    double r = std::atan2(v[1], v[0]);
    r = std::fmod(r, kPi);
    if (r < 0) r += kPi;
    if (r >= kPi) r = 0.0;
    return r;
}

namespace closed_form {

namespace {
// θ = θ' + 2πk with θ' ∈ [0, 2π).
std::pair<double, double> reduce(double theta) {
    const double k = std::floor(theta / kTwoPi);
    return {theta - k * kTwoPi, k * kTwoPi};
}
void require_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidInput("lambda must be > 0");
}
}  // namespace

double phi_lambda(double lambda, double theta) {
    require_lambda(lambda);
    const auto [t, lift] = reduce(theta);
    return 2.0 * std::atan2(std::sin(0.5 * t), lambda * std::cos(0.5 * t)) + lift;
}

double phi_lambda_slope(double lambda, double theta) {
    require_lambda(lambda);
    const double a = 0.5 * (lambda + 1.0 / lambda);
    const double b = 0.5 * (lambda - 1.0 / lambda);
    return 1.0 / (a + b * std::cos(theta));
}

double psi_tau(double tau, double theta) {
    const auto [t, lift] = reduce(theta);
    if (t < 0.5 * kPi || t > 1.5 * kPi) return theta;
    const double s = t - 0.5 * kPi;
    return std::atan2(std::sin(s), tau * std::sin(s) + std::cos(s)) + 0.5 * kPi + lift;
}

double psi_tau_slope(double tau, double theta) {
    const auto [t, lift] = reduce(theta);
    (void)lift;
    if (t < 0.5 * kPi || t > 1.5 * kPi) return 1.0;
    const double s = t - 0.5 * kPi;
    const double q = tau * std::sin(s) + std::cos(s);
    return 1.0 / (std::sin(s) * std::sin(s) + q * q);
}

double psi_tau_lambda(double tau, double lambda, double theta) {
    return phi_lambda(1.0 / lambda, psi_tau(tau, phi_lambda(lambda, theta)));
}

double psi_tau_lambda_slope(double tau, double lambda, double theta) {
    const double a = phi_lambda(lambda, theta);
    const double b = psi_tau(tau, a);
    return phi_lambda_slope(1.0 / lambda, b) * psi_tau_slope(tau, a) *
           phi_lambda_slope(lambda, theta);
}

}  // namespace closed_form

CircleDiffeo make_family(Family kind, FamilyParams p, std::size_t n) {
    if (!std::isfinite(p.tau)) throw InvalidInput("tau must be finite");
    switch (kind) {
        case Family::PhiLambda:
            if (!(p.lambda > 0.0)) throw InvalidInput("lambda must be > 0");
            return CircleDiffeo::from_log_slope(GridFunction::sample(n, [&](double t) {
                return std::log(closed_form::phi_lambda_slope(p.lambda, t));
            }));
        case Family::PsiTau:
            return CircleDiffeo::from_log_slope(GridFunction::sample(n, [&](double t) {
                return std::log(closed_form::psi_tau_slope(p.tau, t));
            }));
        case Family::PsiTauLambda:
            if (!(p.lambda > 0.0)) throw InvalidInput("lambda must be > 0");
            return CircleDiffeo::from_log_slope(GridFunction::sample(n, [&](double t) {
                return std::log(closed_form::psi_tau_lambda_slope(p.tau, p.lambda, t));
            }));
    }
    throw InvalidInput("unknown family");
}

}  // namespace ovalkit
