#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ovalkit/curve.hpp"
#include "ovalkit/diffeo.hpp"
#include "ovalkit/grid.hpp"

namespace ovalkit {

enum class EnergyForm { Definition, Schwarzian };

struct EnergyTerm {
    std::string name;
    double value;
};

struct EnergyBreakdown {
    double total;
    std::vector<EnergyTerm> terms;  // sum to total
    EnergyForm form;
    // The same energy through the Schwarzian of the induced diffeo, when computed.
    std::optional<double> schwarzian_total;

    double term(std::string_view name) const;
    // |total - schwarzian_total|, or 0 when only one form exists.
    double form_gap() const;
};

// ∫ |∇f|² + κ²f² - (2π/L)²f² ds.
EnergyBreakdown energy_S(const DegreeOneCurve& sigma, const GridFunction& f);
// ∫ |∇κ|²/(4κ³) - (2π/L)²/κ ds + 2π, cross-checked against ½∫(S + 2φ'² - 2)/φ'.
EnergyBreakdown energy_G(const DegreeOneCurve& sigma);
// ∫ |∇κ|²/(4κ²) - κ² ds + (2π)²/L, cross-checked against -(2π/L)·½∫(S + 2φ'² - 2).
EnergyBreakdown energy_G_star(const DegreeOneCurve& sigma);
// ∫ |∇f|²/κ - κf² + (2π/L)²f²/κ ds.
EnergyBreakdown energy_S_star(const DegreeOneCurve& sigma, const GridFunction& f);

// E[u] = ∫ ¼(u')² - e^{2u} after shifting u so that ∫e^u = 2π.
double energy_u(const GridFunction& u);

// E_S through the frame Y = f·T_σ: (2π/L)∫ |Y'|² - |Y|² dx.
double energy_S_frame(const DegreeOneCurve& sigma, const GridFunction& f);

struct CurveDensityPair {
    DegreeOneCurve curve;
    GridFunction f;
};
// (σ, f)* = (σ*, f∘φ_σ⁻¹).
CurveDensityPair dual_pair(const DegreeOneCurve& sigma, const GridFunction& f);

// Mollifies the slope φ' (not u) and renormalizes; offset kept.
CircleDiffeo mollify_diffeo(const CircleDiffeo& phi, double eps);

// Family member sampled on fine_n nodes, slope mollified there, then subsampled
// to n nodes. fine_n must be a multiple of n.
CircleDiffeo mollified_family(Family family, FamilyParams params, double eps, std::size_t n,
                              std::size_t fine_n = 16384);

inline constexpr double kDefaultMollifierWidths[] = {0.05, 0.025, 0.0125};

struct ExtrapolatedEnergy {
    std::vector<double> eps;
    std::vector<double> values;
    double extrapolated;  // polynomial extrapolation in ε to ε = 0
};

// Evaluates `energy` on mollifications of a (typically finely sampled,
// non-smooth) diffeo and extrapolates to ε → 0.
ExtrapolatedEnergy extrapolate_mollified(const CircleDiffeo& fine, std::span<const double> eps,
                                         const std::function<double(const CircleDiffeo&)>& energy);

// E_G* on the L = 2π curve of φ, computed as E[u] + 2π.
double energy_G_star_of(const CircleDiffeo& phi);
// E_G on the curve of φ via the Schwarzian form.
double energy_G_of(const CircleDiffeo& phi);

}  // namespace ovalkit
