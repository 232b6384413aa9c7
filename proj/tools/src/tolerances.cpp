#include "ovalkit_cli/tolerances.hpp"

#include <stdexcept>

namespace ovalkit::cli {

namespace {

Tolerances base() {
    Tolerances t;
    t.profile = "default";
    t.identity = 1e-6;
    t.cocycle = 1e-6;
    t.involution = 1e-8;
    t.mobius_defect = 1e-8;
    t.non_mobius = 1e-3;
    t.form_gap = 1e-7;
    t.frame = 1e-8;
    t.energy_floor = 1e-7;
    t.near_zero_energy = 1e-6;
    t.near_zero_defect = 1e-4;
    t.el_residual = 1e-8;
    t.eta_variance = 1e-10;
    t.ode_energy = 1e-8;
    t.closure = 1e-10;
    t.eigen_floor = 1e-6;
    t.closed_form = 1e-6;
    t.extrapolated = 2e-3;
    t.minimize = 1e-3;
    return t;
}

Tolerances scaled(const char* name, double f) {
    Tolerances t = base();
    t.profile = name;
    for (double* v : {&t.identity, &t.cocycle, &t.involution, &t.mobius_defect, &t.form_gap, &t.frame,
                      &t.energy_floor, &t.near_zero_energy, &t.el_residual, &t.eta_variance,
                      &t.ode_energy, &t.closure, &t.eigen_floor, &t.closed_form, &t.extrapolated,
                      &t.minimize}) {
        *v *= f;
    }
    // Looser here means demanding more separation from the Möbius set, and vice versa.
    t.non_mobius /= f;
    t.near_zero_defect *= f;
    return t;
}

}  // namespace

Tolerances tolerance_profile(std::string_view name) {
    if (name == "default") return base();
    if (name == "strict") return scaled("strict", 0.1);
    if (name == "coarse") return scaled("coarse", 100.0);
    throw std::invalid_argument("unknown tolerance profile '" + std::string(name) +
                                "' (expected strict, default or coarse)");
}

}  // namespace ovalkit::cli
