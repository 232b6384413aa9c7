#include "ovalkit/variational.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "fourier.hpp"
#include "ovalkit/error.hpp"
#include "ovalkit/functionals.hpp"
#include "ovalkit/sampling.hpp"

namespace ovalkit {

namespace {

GridFunction exp_of(const GridFunction& u, double c = 1.0) {
    return u.map([c](double v) { return std::exp(c * v); });
}

GridFunction mass_normalized(const GridFunction& u) {
    return u + std::log(kTwoPi / integrate(exp_of(u)));
}

GridFunction antipodal_average(const GridFunction& f) { return 0.5 * (f + antipodal(f)); }

double l2_norm(const GridFunction& f) { return std::sqrt(integrate(f * f)); }

void require_gamma(double gamma) {
    if (!(gamma >= kTwoPi * (1.0 - 1e-14)) || !std::isfinite(gamma)) {
        throw InvalidInput("gamma must be >= 2*pi");
    }
}

}  // namespace

GridFunction explicit_solution(int n, double gamma, double theta0, std::size_t grid) {
    if (n < 1) throw InvalidInput("explicit solution needs n >= 1");
    require_gamma(gamma);
    const double a = std::max(1.0, gamma / kTwoPi);
    const double b = std::sqrt(std::max(0.0, a * a - 1.0));
    return GridFunction::sample(grid, [&](double t) {
        return -std::log(a + b * std::cos(static_cast<double>(n) * (t - theta0)));
    });
}

double explicit_energy(int n, double gamma) {
    if (n < 1) throw InvalidInput("explicit energy needs n >= 1");
    require_gamma(gamma);
    const double n2 = static_cast<double>(n) * n;
    return -kTwoPi * n2 / 4.0 + (n2 - 4.0) * gamma / 4.0;
}

Multipliers proof_multipliers(int n, double gamma) {
    const double alpha = -static_cast<double>(n) * n / 4.0;
    return {alpha, alpha * gamma / kTwoPi};
}

Multipliers statement_multipliers(int n, double gamma) {
    const double n2 = static_cast<double>(n) * n;
    return {-n2, -gamma / kTwoPi * n2};
}

double el_residual_at(const GridFunction& u, double alpha, double beta) {
    const GridFunction r = 0.25 * derivative(u, 2) - alpha * exp_of(u, 2.0) + beta * exp_of(u);
    return l2_norm(r);
}

ElFit el_residual(const GridFunction& u) {
    // b ≈ α·e^{2u} - β·e^u with b = ¼u''.
    const GridFunction b = 0.25 * derivative(u, 2);
    const GridFunction c1 = exp_of(u, 2.0);
    const GridFunction c2 = -exp_of(u);
    const double g11 = integrate(c1 * c1), g12 = integrate(c1 * c2), g22 = integrate(c2 * c2);
    const double r1 = integrate(c1 * b), r2 = integrate(c2 * b);
    const double det = g11 * g22 - g12 * g12;
    double alpha, beta;
    if (det > 1e-10 * g11 * g22) {
        alpha = (g22 * r1 - g12 * r2) / det;
        beta = (g11 * r2 - g12 * r1) / det;
    } else {
        // Collinear columns: fit α = β = c along e^{2u} - e^u.
        const GridFunction d = c1 + c2;
        const double dd = integrate(d * d);
        const double c = dd > 1e-24 ? integrate(d * b) / dd : -1.0;
        alpha = beta = c;
    }
    return {alpha, beta, el_residual_at(u, alpha, beta)};
}

Conservation conservation_check(const GridFunction& u, double alpha, double beta) {
    const GridFunction du = derivative(u);
    const GridFunction eta = 0.25 * (du * du) - alpha * exp_of(u, 2.0) + 2.0 * beta * exp_of(u);
    const double n = static_cast<double>(eta.size());
    double mean = 0.0;
    for (double v : eta.samples()) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : eta.samples()) var += (v - mean) * (v - mean);
    return {var / n, mean};
}

GridFunction energy_gradient(const GridFunction& u) {
    return -0.5 * derivative(u, 2) - 2.0 * exp_of(u, 2.0);
}

namespace {

struct Problem {
    bool symmetric = false;
    bool has_gamma = false;
    double gamma = 0.0;
};

Problem read_constraints(const std::vector<Constraint>& constraints) {
    Problem p;
    for (const auto& c : constraints) {
        switch (c.kind) {
            case ConstraintKind::Mass:
                break;  // always enforced
            case ConstraintKind::Gamma:
                require_gamma(c.value);
                p.has_gamma = true;
                p.gamma = c.value;
                break;
            case ConstraintKind::Symmetry:
                p.symmetric = true;
                break;
        }
    }
    return p;
}

GridFunction enforce(GridFunction u, const Problem& p) {
    u = drop_nyquist(u);
    if (p.symmetric) u = antipodal_average(u);
    u = mass_normalized(u);
    if (!p.has_gamma) return u;
    // Newton on s for ∫e^{2(u + s·d)} = γ along d = e^u - mean, which leaves
    // the mass unchanged to first order; the mass is re-normalized each pass.
    for (int it = 0; it < 200; ++it) {
        const GridFunction e1 = exp_of(u);
        const double f = integrate(exp_of(u, 2.0)) - p.gamma;
        if (std::abs(f) <= 1e-13 * p.gamma) break;
        const GridFunction d = drop_nyquist(e1 - integrate(e1) / kTwoPi);
        const double df = integrate(2.0 * d * exp_of(u, 2.0));
        if (!(std::abs(df) > 0.0)) break;
        double s = -f / df;
        // Damp steps that would overshoot the exponential.
        const double lim = 0.5 / std::max(1e-300, d.max_abs());
        s = std::clamp(s, -lim, lim);
        u = mass_normalized(u + s * d);
    }
    return u;
}

// L² projection of g orthogonal to span(cs).
GridFunction project_l2(const GridFunction& g, const std::vector<GridFunction>& cs) {
    if (cs.size() == 1) {
        return g - (integrate(g * cs[0]) / integrate(cs[0] * cs[0])) * cs[0];
    }
    const double m11 = integrate(cs[0] * cs[0]), m12 = integrate(cs[0] * cs[1]),
                 m22 = integrate(cs[1] * cs[1]);
    const double b1 = integrate(cs[0] * g), b2 = integrate(cs[1] * g);
    const double det = m11 * m22 - m12 * m12;
    if (!(det > 1e-12 * m11 * m22)) return project_l2(g, {cs[0]});
    const double a1 = (m22 * b1 - m12 * b2) / det, a2 = (m11 * b2 - m12 * b1) / det;
    return g - a1 * cs[0] - a2 * cs[1];
}

GridFunction precondition(const GridFunction& g, Metric metric) {
    const std::size_t n = g.size();
    auto c = detail::forward(g.samples());
    for (std::size_t k = 0; k < n; ++k) {
        const double m = static_cast<double>(detail::signed_mode(k, n));
        if (k == n / 2) {
            c[k] = 0.0;
        } else if (metric == Metric::Sobolev) {
            c[k] /= 1.0 + 0.5 * m * m;
        }
    }
    return GridFunction(detail::backward(c));
}

struct Direction {
    GridFunction d;        // descent direction, tangent to the constraints
    double gradient_norm;  // L² norm of the L²-projected gradient
    double slope;          // ∫g·d
};

Direction direction(const GridFunction& u, const Problem& p, Metric metric) {
    GridFunction g = drop_nyquist(energy_gradient(u));
    std::vector<GridFunction> cs{exp_of(u)};
    if (p.has_gamma) cs.push_back(2.0 * exp_of(u, 2.0));
    if (p.symmetric) {
        g = antipodal_average(g);
        for (auto& c : cs) c = antipodal_average(c);
    }
    const double gn = l2_norm(project_l2(g, cs));
    // Projection in the preconditioned metric: d = Pg - Σ aᵢ PCᵢ with
    // ∫Cᵢ d = 0, so d stays tangent in L².
    const GridFunction pg = precondition(g, metric);
    std::vector<GridFunction> pc;
    for (const auto& c : cs) pc.push_back(precondition(c, metric));
    GridFunction d = pg;
    if (cs.size() == 1) {
        d = pg - (integrate(cs[0] * pg) / integrate(cs[0] * pc[0])) * pc[0];
    } else {
        const double m11 = integrate(cs[0] * pc[0]), m12 = integrate(cs[0] * pc[1]),
                     m21 = integrate(cs[1] * pc[0]), m22 = integrate(cs[1] * pc[1]);
        const double b1 = integrate(cs[0] * pg), b2 = integrate(cs[1] * pg);
        const double det = m11 * m22 - m12 * m21;
        if (det > 1e-12 * std::abs(m11 * m22)) {
            const double a1 = (m22 * b1 - m12 * b2) / det, a2 = (m11 * b2 - m21 * b1) / det;
            d = pg - a1 * pc[0] - a2 * pc[1];
        } else {
            d = pg - (b1 / m11) * pc[0];
        }
    }
    return {d, gn, integrate(g * d)};
}

}  // namespace

GridFunction enforce_constraints(const GridFunction& u, const std::vector<Constraint>& constraints) {
    return enforce(u, read_constraints(constraints));
}

MinimizeResult minimize(const GridFunction& u0, const std::vector<Constraint>& constraints,
                        const MinimizeOptions& options) {
    if (!(options.step > 0.0)) throw InvalidInput("minimize: step must be > 0");
    if (!(options.backtrack > 0.0 && options.backtrack < 1.0)) {
        throw InvalidInput("minimize: backtracking factor must lie in (0, 1)");
    }
    const Problem p = read_constraints(constraints);
    GridFunction u = enforce(u0, p);
    double e = energy_u(u);
    Direction dir = direction(u, p, options.metric);
    std::vector<TraceEntry> trace{{0, e, dir.gradient_norm}};
    double t = options.step;
    std::size_t it = 0;
    while (it < options.max_iter && dir.gradient_norm >= options.tol) {
        t = std::min(2.0 * t, options.step);
        bool accepted = false;
        for (;;) {
            GridFunction trial = enforce(u - t * dir.d, p);
            const double et = energy_u(trial);
            const bool armijo = et <= e - 1e-4 * t * dir.slope;
            // Near the minimum E changes below rounding; then a step that
            // keeps E within the trace tolerance must reduce the gradient.
            const bool flat = et <= e + 1e-12 * std::max(1.0, std::abs(e));
            if (armijo || flat) {
                Direction next = direction(trial, p, options.metric);
                if (armijo || next.gradient_norm < dir.gradient_norm) {
                    u = std::move(trial);
                    e = et;
                    dir = std::move(next);
                    accepted = true;
                    break;
                }
            }
            t *= options.backtrack;
            if (t < 1e-14 * options.step) break;
        }
        if (!accepted) break;  // stalled at rounding level
        ++it;
        trace.push_back({it, e, dir.gradient_norm});
    }
    const ElFit fit = el_residual(u);
    const Conservation cons = conservation_check(u, fit.alpha, fit.beta);
    const bool converged = dir.gradient_norm < options.tol;
    return {u,        e,           fit.alpha,          fit.beta,  fit.residual,
            cons.variance, cons.mean, it,              dir.gradient_norm, converged,
            std::move(trace)};
}

CriticalPointMatch classify_critical_point(const GridFunction& u_in) {
    const GridFunction u = mass_normalized(u_in);
    const std::size_t n = u.size();
    const double gamma = integrate(exp_of(u, 2.0));
    if (gamma / kTwoPi - 1.0 < 1e-12) return {0, 0.0, u.max_abs()};
    // e^{-u} = A + B cos n(θ - θ₀): the dominant nonzero mode gives n and θ₀.
    const auto c = detail::forward(exp_of(u, -1.0).samples());
    std::size_t best = 1;
    for (std::size_t k = 1; k < n / 2; ++k) {
        if (std::abs(c[k]) > std::abs(c[best])) best = k;
    }
    const int m = static_cast<int>(best);
    const double theta0 = -std::arg(c[best]) / m;
    const GridFunction ref = explicit_solution(m, std::max(gamma, kTwoPi), theta0, n);
    return {m, theta0, max_abs_difference(u, ref)};
}

LowerBoundReport energy_lower_bound_experiment(double gamma, std::size_t trials,
                                               const LowerBoundOptions& options) {
    require_gamma(gamma);
    std::vector<Constraint> cs{Constraint::mass(), Constraint::gamma(gamma)};
    if (options.symmetric) cs.push_back(Constraint::symmetry());
    std::vector<LowerBoundTrial> results(trials);
    auto run = [&](std::size_t i) {
        Rng rng(options.seed + i);
        TrigPolynomialOptions tp;
        tp.degree = 6;
        tp.amplitude = 0.5;
        tp.even_modes_only = options.symmetric;
        const GridFunction u0 = random_trig_polynomial(rng, options.grid, tp);
        const MinimizeResult r = minimize(u0, cs, options.minimize);
        results[i] = {r.energy, r.el_residual, r.converged, classify_critical_point(r.u_star)};
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(options.threads,
                                                             static_cast<unsigned>(trials)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < trials; ++i) run(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < trials; i += workers) run(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    double best = results.empty() ? 0.0 : results[0].energy;
    for (const auto& r : results) best = std::min(best, r.energy);
    return {gamma, best, std::move(results)};
}

}  // namespace ovalkit
