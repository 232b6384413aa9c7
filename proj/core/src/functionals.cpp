#include "ovalkit/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ovalkit/error.hpp"

namespace ovalkit {

double EnergyBreakdown::term(std::string_view name) const {
    for (const auto& t : terms) {
        if (t.name == name) return t.value;
    }
    throw InvalidInput("no energy term named " + std::string(name));
}

double EnergyBreakdown::form_gap() const {
    return schwarzian_total ? std::abs(total - *schwarzian_total) : 0.0;
}

namespace {

EnergyBreakdown make_breakdown(std::vector<EnergyTerm> terms, std::optional<double> alt) {
    double total = 0.0;
    for (const auto& t : terms) total += t.value;
    return {total, std::move(terms), EnergyForm::Definition, alt};
}

void require_convex(const DegreeOneCurve& sigma, const char* what) {
    if (!sigma.strictly_convex()) {
        throw PreconditionError(std::string(what) +
                                " needs a strictly convex curve (curvature must stay positive)");
    }
}

void require_grid(const DegreeOneCurve& sigma, const GridFunction& f) {
    if (sigma.size() != f.size()) throw InvalidInput("curve and density grids differ");
}

// ∫(S + 2φ'² - 2)·weight dθ with the given weight of φ'.
template <class W>
double schwarzian_integral(const CircleDiffeo& phi, W&& weight) {
    const GridFunction defect = mobius_defect(phi);
    const GridFunction& u = phi.log_slope();
    std::vector<double> v(u.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = defect[j] * weight(std::exp(u[j]));
    return integrate(GridFunction(std::move(v)));
}

}  // namespace

EnergyBreakdown energy_S(const DegreeOneCurve& sigma, const GridFunction& f) {
    require_grid(sigma, f);
    const double L = sigma.length();
    const double r = kTwoPi / L;   // ∇ = r·∂x
    const double ds = L / kTwoPi;  // ds = ds·dx
    const GridFunction k = curvature(sigma);
    const GridFunction fx = derivative(f);
    return make_breakdown({{"gradient", ds * r * r * integrate(fx * fx)},
                           {"curvature", ds * integrate(k * k * f * f)},
                           {"zero_mode", -ds * r * r * integrate(f * f)}},
                          std::nullopt);
}

EnergyBreakdown energy_G(const DegreeOneCurve& sigma) {
    require_convex(sigma, "E_G");
    const double L = sigma.length();
    const double r = kTwoPi / L, ds = L / kTwoPi;
    const GridFunction k = curvature(sigma);
    const GridFunction kx = derivative(k);
    const GridFunction inv_k = k.map([](double v) { return 1.0 / v; });
    const GridFunction grad = kx * kx * inv_k * inv_k * inv_k * 0.25;
    // E_G is scale invariant, so the Schwarzian form is evaluated as is.
    const double alt = 0.5 * schwarzian_integral(induced_diffeo(sigma),
                                                 [](double s) { return 1.0 / s; });
    return make_breakdown({{"gradient", ds * r * r * integrate(grad)},
                           {"zero_mode", -ds * r * r * integrate(inv_k)},
                           {"constant", kTwoPi}},
                          alt);
}

EnergyBreakdown energy_G_star(const DegreeOneCurve& sigma) {
    require_convex(sigma, "E_G*");
    const double L = sigma.length();
    const double r = kTwoPi / L, ds = L / kTwoPi;
    const GridFunction k = curvature(sigma);
    const GridFunction kx = derivative(k);
    const GridFunction grad = (kx * kx) * k.map([](double v) { return 0.25 / (v * v); });
    // At L = 2π this is -½∫(S + 2φ'² - 2); E_G* scales as 1/L.
    const double alt = -0.5 * r * schwarzian_integral(induced_diffeo(sigma),
                                                      [](double) { return 1.0; });
    return make_breakdown({{"gradient", ds * r * r * integrate(grad)},
                           {"curvature", -ds * integrate(k * k)},
                           {"constant", kTwoPi * kTwoPi / L}},
                          alt);
}

EnergyBreakdown energy_S_star(const DegreeOneCurve& sigma, const GridFunction& f) {
    require_convex(sigma, "E_S*");
    require_grid(sigma, f);
    const double L = sigma.length();
    const double r = kTwoPi / L, ds = L / kTwoPi;
    const GridFunction k = curvature(sigma);
    const GridFunction inv_k = k.map([](double v) { return 1.0 / v; });
    const GridFunction fx = derivative(f);
    return make_breakdown({{"gradient", ds * r * r * integrate(fx * fx * inv_k)},
                           {"curvature", -ds * integrate(k * f * f)},
                           {"zero_mode", ds * r * r * integrate(f * f * inv_k)}},
                          std::nullopt);
}

double energy_u(const GridFunction& u) {
    const double mass = integrate(u.map([](double v) { return std::exp(v); }));
    const GridFunction un = u + std::log(kTwoPi / mass);
    const GridFunction du = derivative(un);
    return integrate(0.25 * (du * du) - un.map([](double v) { return std::exp(2.0 * v); }));
}

double energy_S_frame(const DegreeOneCurve& sigma, const GridFunction& f) {
    require_grid(sigma, f);
    const std::vector<double> a = sigma.tangent_angle();
    std::vector<double> y1(a.size()), y2(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        y1[j] = f[j] * std::cos(a[j]);
        y2[j] = f[j] * std::sin(a[j]);
    }
    const GridFunction Y1(std::move(y1)), Y2(std::move(y2));
    const GridFunction d1 = derivative(Y1), d2 = derivative(Y2);
    return kTwoPi / sigma.length() * integrate(d1 * d1 + d2 * d2 - Y1 * Y1 - Y2 * Y2);
}

CurveDensityPair dual_pair(const DegreeOneCurve& sigma, const GridFunction& f) {
    require_grid(sigma, f);
    const CircleDiffeo psi = invert(induced_diffeo(sigma));
    const TrigInterpolant fi(f);
    const std::vector<double> v = psi.node_values();
    std::vector<double> g(v.size());
    for (std::size_t j = 0; j < g.size(); ++j) g[j] = fi(v[j]);
    return {from_diffeo(psi, sigma.base_point(), sigma.length()), GridFunction(std::move(g))};
}

CircleDiffeo mollify_diffeo(const CircleDiffeo& phi, double eps) {
    const GridFunction s = mollify(phi.slope(), eps);
    return CircleDiffeo::from_log_slope(s.map([](double v) { return std::log(v); }), phi.offset());
}

CircleDiffeo mollified_family(Family family, FamilyParams params, double eps, std::size_t n,
                              std::size_t fine_n) {
    if (!(eps > 0.0)) throw InvalidInput("mollifier width must be positive");
    const std::size_t fine = std::max(fine_n, n);
    if (fine % n != 0) throw InvalidInput("fine grid must be a multiple of the grid size");
    const CircleDiffeo raw = make_family(family, params, fine);
    const GridFunction smooth = mollify(raw.slope(), eps);
    std::vector<double> u(n);
    const std::size_t stride = fine / n;
    for (std::size_t j = 0; j < n; ++j) u[j] = std::log(smooth[j * stride]);
    return CircleDiffeo::from_log_slope(GridFunction(std::move(u)), 0.0);
}

ExtrapolatedEnergy extrapolate_mollified(const CircleDiffeo& fine, std::span<const double> eps,
                                         const std::function<double(const CircleDiffeo&)>& energy) {
    if (eps.empty()) throw InvalidInput("extrapolation needs at least one width");
    ExtrapolatedEnergy out{{eps.begin(), eps.end()}, {}, 0.0};
    for (double e : eps) out.values.push_back(energy(mollify_diffeo(fine, e)));
    // Neville's scheme evaluated at ε = 0.
    std::vector<double> p = out.values;
    const std::size_t m = p.size();
    for (std::size_t level = 1; level < m; ++level) {
        for (std::size_t i = 0; i + level < m; ++i) {
            const double xi = out.eps[i], xj = out.eps[i + level];
            p[i] = (xi * p[i + 1] - xj * p[i]) / (xi - xj);
        }
    }
    out.extrapolated = p[0];
    return out;
}

double energy_G_star_of(const CircleDiffeo& phi) { return energy_u(phi.log_slope()) + kTwoPi; }

double energy_G_of(const CircleDiffeo& phi) {
    return 0.5 * schwarzian_integral(phi, [](double s) { return 1.0 / s; });
}

}  // namespace ovalkit
