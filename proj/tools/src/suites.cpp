#include "ovalkit_cli/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ovalkit/curve.hpp"
#include "ovalkit/diffeo.hpp"
#include "ovalkit/functionals.hpp"
#include "ovalkit/sampling.hpp"
#include "ovalkit/spectral.hpp"
#include "ovalkit/variational.hpp"

namespace ovalkit::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lift_gap(const DegreeOneCurve& a, const DegreeOneCurve& b) {
    return max_abs_difference(a.angle_periodic(), b.angle_periodic());
}

void identities(Report& rep, const Tolerances& tol, std::uint64_t seed) {
    Rng rng(seed);

    double cocycle = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto phi = random_diffeo(rng, 512);
        const auto psi = random_diffeo(rng, 512);
        cocycle = std::max(cocycle, cocycle_defect(phi, psi));
    }
    rep.rows.push_back(below("cocycle", cocycle, tol.cocycle, "S(φ∘ψ) = S(φ)∘ψ·ψ'² + S(ψ), 100 pairs"));

    double mob = 0.0, generic = kInf;
    for (int i = 0; i < 100; ++i) {
        mob = std::max(mob, mobius_defect(mobius_diffeo(random_mobius(rng), 512)).max_abs());
        generic = std::min(generic, mobius_defect(random_diffeo(rng, 512)).max_abs());
    }
    rep.rows.push_back(below("mobius_certificate", mob, tol.mobius_defect, "S + 2φ'² - 2 = 0 on Γ(L), 100 draws"));
    rep.rows.push_back(above("non_mobius_defect", generic, tol.non_mobius, "generic diffeos are not Möbius, 100 draws"));

    double dual_g = 0.0, dual_s = 0.0, frame = 0.0, form_g = 0.0, form_gs = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double len = 0.5 + 4.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        const auto c = from_diffeo(random_diffeo(rng, 512), {0.0, 0.0}, len);
        const auto f = random_trig_polynomial(rng, 512) + 1.0;
        dual_g = std::max(dual_g, std::abs(energy_G(c).total - len / kTwoPi * energy_G_star(dual(c)).total));
        const auto d = dual_pair(c, f);
        dual_s = std::max(dual_s, std::abs(energy_S(d.curve, d.f).total - kTwoPi / len * energy_S_star(c, f).total));
        const auto c2 = from_diffeo(induced_diffeo(c));
        frame = std::max(frame, std::abs(energy_S(c2, f).total - energy_S_frame(c2, f)));
        form_g = std::max(form_g, energy_G(c).form_gap());
        form_gs = std::max(form_gs, energy_G_star(c).form_gap());
    }
    rep.rows.push_back(below("dual_energy", dual_g, tol.identity, "E_G(σ) = (L/2π)·E_G*(σ*), 50 curves"));
    rep.rows.push_back(below("dual_density", dual_s, tol.identity, "E_S((σ,f)*) = (2π/L)·E_S*(σ,f), 50 pairs"));
    rep.rows.push_back(below("frame", frame, tol.frame, "E_S(σ,f) = ∫|Y'|² - |Y|², Y = f·T, 50 pairs"));
    rep.rows.push_back(below("form_gap_E_G", form_g, tol.form_gap, "E_G definition vs Schwarzian form, 50 curves"));
    rep.rows.push_back(below("form_gap_E_G_star", form_gs, tol.form_gap, "E_G* definition vs Schwarzian form, 50 curves"));

    double inv_s = 0.0, inv_g = 0.0, inv_gs = 0.0, involution = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto c = random_closed_convex_curve(rng, 1024);
        const auto phi = mobius_diffeo(random_mobius(rng, 2.0), 1024);
        const DensityHalf f{random_trig_polynomial(rng, 1024) + 1.0};
        const auto r = act_right(c, phi);
        inv_s = std::max(inv_s, std::abs(energy_S(r, act_density(f, phi).values).total - energy_S(c, f.values).total));
        inv_g = std::max(inv_g, std::abs(energy_G(r).total - energy_G(c).total));
        inv_gs = std::max(inv_gs, std::abs(energy_G_star(act_left(phi, c)).total - energy_G_star(c).total));
        involution = std::max(involution, lift_gap(dual(act_left(phi, c)), act_right(dual(c), invert(phi))));
    }
    rep.rows.push_back(below("invariance_E_S", inv_s, tol.identity, "E_S(σ·φ, f·φ) = E_S(σ, f), 50 triples"));
    rep.rows.push_back(below("invariance_E_G", inv_g, tol.identity, "E_G(σ·φ) = E_G(σ), 50 triples"));
    rep.rows.push_back(below("invariance_E_G_star", inv_gs, tol.identity, "E_G*(φ·σ) = E_G*(σ), 50 triples"));
    rep.rows.push_back(below("involution", involution, tol.involution, "(φ·σ)* = σ*·φ⁻¹, 50 triples"));
}

void inequalities(Report& rep, const Tolerances& tol, std::uint64_t seed) {
    Rng rng(seed + 1);
    double min_g = kInf, min_gs = kInf, min_lambda = kInf;
    int unexplained = 0;
    for (int i = 0; i < 100; ++i) {
        const auto c = random_closed_convex_curve(rng, 256);
        const double g = energy_G(c).total;
        const double gs = energy_G_star(c).total;
        min_g = std::min(min_g, g);
        min_gs = std::min(min_gs, gs);
        if (std::min(g, gs) < tol.near_zero_energy &&
            mobius_defect(induced_diffeo(c)).max_abs() >= tol.near_zero_defect) {
            ++unexplained;
        }
        min_lambda = std::min(min_lambda, lowest_eigenpair(c).lambda_min);
    }
    rep.rows.push_back(above("closed_E_G_min", min_g, -tol.energy_floor, "E_G ≥ 0 on closed convex curves, 100 curves"));
    rep.rows.push_back(above("closed_E_G_star_min", min_gs, -tol.energy_floor, "E_G* ≥ 0 on closed convex curves, 100 curves"));
    rep.rows.push_back(below("near_zero_non_ovals", unexplained, 0.0, "near-zero energy only on ovals"));
    rep.rows.push_back(above("closed_lambda_min", min_lambda, 0.5 - tol.eigen_floor, "λ_σ ≥ 1/2 on closed curves, 100 curves"));
    rep.rows.push_back(above("closed_lambda_empirical", min_lambda, 0.6, "empirical floor λ_σ ≥ 0.6"));

    double floor = kInf;
    for (int n = 2; n <= 4; ++n) {
        for (double g : {kTwoPi, 2.5 * kPi, 3 * kPi, 4 * kPi}) {
            floor = std::min(floor, energy_u(explicit_solution(n, g, 0.0, 512)));
        }
    }
    rep.rows.push_back(above("explicit_floor", floor, -kTwoPi - tol.energy_floor, "E[u] ≥ -2π on explicit critical points, n ≥ 2"));
}

void ode(Report& rep, const Tolerances& tol) {
    double res = 0.0, var = 0.0, mean = 0.0, energy = 0.0, equality = 0.0, floor = kInf;
    for (int n = 1; n <= 4; ++n) {
        for (double g : {kTwoPi, 2.5 * kPi, 3 * kPi, 4 * kPi}) {
            const auto u = explicit_solution(n, g, 0.0, 512);
            const auto m = proof_multipliers(n, g);
            const auto c = conservation_check(u, m.alpha, m.beta);
            const double e = energy_u(u);
            res = std::max(res, el_residual_at(u, m.alpha, m.beta));
            var = std::max(var, c.variance);
            mean = std::max(mean, std::abs(c.mean + n * n / 4.0));
            energy = std::max(energy, std::abs(e - explicit_energy(n, g)));
            if (n >= 2) floor = std::min(floor, e);
            if (n == 2 || g == kTwoPi) equality = std::max(equality, std::abs(e + kTwoPi));
        }
    }
    rep.rows.push_back(below("el_residual", res, tol.el_residual, "¼u'' - αe^{2u} + βe^u = 0, α = -n²/4, β = αγ/2π"));
    rep.rows.push_back(below("eta_variance", var, tol.eta_variance, "¼u'² - αe^{2u} + 2βe^u is constant"));
    rep.rows.push_back(below("eta_mean", mean, tol.el_residual, "η = -n²/4"));
    rep.rows.push_back(below("energy_formula", energy, tol.ode_energy, "E[u] = -2πn²/4 + (n² - 4)γ/4"));
    rep.rows.push_back(above("energy_floor", floor, -kTwoPi - tol.energy_floor, "E[u] ≥ -2π for n ≥ 2"));
    rep.rows.push_back(below("energy_equality", equality, tol.ode_energy, "E[u] = -2π iff γ = 2π or n = 2"));
}

}  // namespace

Suite suite_from_name(std::string_view name) {
    if (name == "identities") return Suite::Identities;
    if (name == "inequalities") return Suite::Inequalities;
    if (name == "ode") return Suite::Ode;
    if (name == "all") return Suite::All;
    throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

Report run_suite(Suite suite, const Tolerances& tol, std::uint64_t seed) {
    Report rep;
    rep.tolerance_profile = tol.profile;
    switch (suite) {
        case Suite::Identities: rep.title = "identities"; break;
        case Suite::Inequalities: rep.title = "inequalities"; break;
        case Suite::Ode: rep.title = "ode"; break;
        case Suite::All: rep.title = "all"; break;
    }
    if (suite == Suite::Identities || suite == Suite::All) identities(rep, tol, seed);
    if (suite == Suite::Inequalities || suite == Suite::All) inequalities(rep, tol, seed);
    if (suite == Suite::Ode || suite == Suite::All) ode(rep, tol);
    rep.notes.push_back("seed " + std::to_string(seed));
    return rep;
}

}  // namespace ovalkit::cli
