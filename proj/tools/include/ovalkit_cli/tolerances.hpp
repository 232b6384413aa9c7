#pragma once

#include <string>
#include <string_view>

namespace ovalkit::cli {

// Single source of truth for every pass/fail judgement made by the tool.
struct Tolerances {
    std::string profile;
    double identity;          // dual / invariance identities
    double cocycle;
    double involution;        // dual/action intertwining, in lift sup-norm
    double mobius_defect;     // Γ(L) certificate
    double non_mobius;        // generic diffeos must exceed this defect
    double form_gap;          // definitional vs Schwarzian energy forms
    double frame;             // E_S through the frame Y = f·T
    double energy_floor;      // slack in E ≥ 0 and E[u] ≥ -2π
    double near_zero_energy;  // energies this small must come from ovals
    double near_zero_defect;
    double el_residual;
    double eta_variance;
    double ode_energy;
    double closure;           // closed-curve test
    double eigen_floor;       // slack in λ ≥ 1/2
    double closed_form;       // sweep comparisons with closed forms
    double extrapolated;      // mollified-and-extrapolated energies
    double minimize;          // terminal energy of the minimizer
};

// "strict", "default" or "coarse"; throws std::invalid_argument otherwise.
Tolerances tolerance_profile(std::string_view name);

}  // namespace ovalkit::cli
