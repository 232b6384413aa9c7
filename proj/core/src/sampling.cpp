#include "ovalkit/sampling.hpp"

#include <cmath>

#include "ovalkit/error.hpp"

namespace ovalkit {

GridFunction random_trig_polynomial(Rng& rng, std::size_t n, const TrigPolynomialOptions& opt) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> a(static_cast<std::size_t>(opt.degree) + 1, 0.0), b(a.size(), 0.0);
    for (int k = 1; k <= opt.degree; ++k) {
        if (opt.even_modes_only && k % 2 != 0) continue;
        a[static_cast<std::size_t>(k)] = opt.amplitude / k * normal(rng);
        b[static_cast<std::size_t>(k)] = opt.amplitude / k * normal(rng);
    }
    return GridFunction::sample(n, [&](double t) {
        double s = 0.0;
        for (int k = 1; k <= opt.degree; ++k) {
            s += a[static_cast<std::size_t>(k)] * std::cos(k * t) +
                 b[static_cast<std::size_t>(k)] * std::sin(k * t);
        }
        return s;
    });
}

CircleDiffeo random_diffeo(Rng& rng, std::size_t n, const TrigPolynomialOptions& opt) {
    std::uniform_real_distribution<double> offset(0.0, kTwoPi);
    const GridFunction u = random_trig_polynomial(rng, n, opt);
    return CircleDiffeo::from_log_slope(u, offset(rng));
}

MobiusElement random_mobius(Rng& rng, double max_singular) {
    std::uniform_real_distribution<double> entry(-2.0, 2.0);
    for (;;) {
        const double a = entry(rng), b = entry(rng), c = entry(rng), d = entry(rng);
        const double det = a * d - b * c;
        if (det < 1e-3) continue;
        const MobiusElement m = MobiusElement::normalized(a, b, c, d);
        // For det 1 the singular values are s and 1/s with s² + s⁻² = ‖M‖_F².
        const double f2 = m.a() * m.a() + m.b() * m.b() + m.c() * m.c() + m.d() * m.d();
        const double s2 = 0.5 * (f2 + std::sqrt(std::max(0.0, f2 * f2 - 4.0)));
        if (std::sqrt(s2) <= max_singular) return m;
    }
}

DegreeOneCurve random_closed_convex_curve(Rng& rng, std::size_t n, const TrigPolynomialOptions& opt,
                                          Vec2 base_point, double length) {
    GridFunction w = random_trig_polynomial(rng, n, opt);
    const GridFunction c = GridFunction::sample(n, [](double t) { return std::cos(t); });
    const GridFunction s = GridFunction::sample(n, [](double t) { return std::sin(t); });
    // F(x) = ∫e^{w + x₁cos + x₂sin}(cos, sin) is the gradient of a strictly
    // convex function, so Newton converges.
    for (int it = 0; it < 100; ++it) {
        const GridFunction e = w.map([](double v) { return std::exp(v); });
        const double f1 = integrate(e * c), f2 = integrate(e * s);
        const double mass = integrate(e);
        if (std::hypot(f1, f2) < 1e-14 * mass) break;
        const double j11 = integrate(e * c * c), j12 = integrate(e * c * s),
                     j22 = integrate(e * s * s);
        const double det = j11 * j22 - j12 * j12;
        double x1 = -(j22 * f1 - j12 * f2) / det;
        double x2 = -(-j12 * f1 + j11 * f2) / det;
        const double step = std::hypot(x1, x2);
        if (step > 1.0) {
            x1 /= step;
            x2 /= step;
        }
        w = w + x1 * c + x2 * s;
    }
    const CircleDiffeo psi = CircleDiffeo::from_log_slope(w, 0.0);
    return from_diffeo(invert(psi), base_point, length);
}

}  // namespace ovalkit
