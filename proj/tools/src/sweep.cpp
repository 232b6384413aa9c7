#include "ovalkit_cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iterator>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ovalkit/curve.hpp"
#include "ovalkit/diffeo.hpp"
#include "ovalkit/functionals.hpp"
#include "ovalkit/spectral.hpp"
#include "ovalkit/variational.hpp"
#include "ovalkit_cli/report.hpp"
#include "ovalkit_cli/spec.hpp"

namespace ovalkit::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double count_or_inf(const BalanceReport& r) {
    return r.n_B ? static_cast<double>(*r.n_B) : kInf;
}

std::vector<double> lambda_row(double lambda, std::size_t n) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    const auto phi = make_family(Family::PhiLambda, {lambda, 0.0}, n);
    const auto c = from_diffeo(phi);
    const auto b = balance_points(phi);
    const double closed = 1.5 * kPi * (1.0 - 0.5 * (lambda + 1.0 / lambda));
    return {lambda,
            energy_G(c).total,
            energy_G_star(c).total,
            closed,
            lowest_eigenpair(c).lambda_min,
            count_or_inf(b),
            static_cast<double>(b.n_SB),
            closure_defect(c)};
}

std::vector<double> tau_row(double tau, std::size_t n) {
    // Energies on a 4096 grid, mollified and extrapolated to zero width.
    const auto fine = make_family(Family::PsiTau, {1.0, tau}, 4096);
    const double gs = extrapolate_mollified(fine, kDefaultMollifierWidths, energy_G_star_of).extrapolated;
    const double g = extrapolate_mollified(fine, kDefaultMollifierWidths, energy_G_of).extrapolated;
    const double eps = kDefaultMollifierWidths[std::size(kDefaultMollifierWidths) - 1];
    const auto smooth = from_diffeo(mollified_family(Family::PsiTau, {1.0, tau}, eps, n, kFineGrid));
    const auto raw = make_family(Family::PsiTau, {1.0, tau}, n);
    const auto b = balance_points(raw);
    return {tau, g, gs, lowest_eigenpair(smooth).lambda_min, count_or_inf(b),
            static_cast<double>(b.n_SB), closure_defect(from_diffeo(raw))};
}

std::vector<double> gamma_row(double gamma, const SweepOptions& o, std::size_t index) {
    LowerBoundOptions lb;
    lb.grid = o.grid;
    lb.symmetric = true;
    lb.seed = o.seed + 1000 * index;
    lb.threads = 1;
    const auto rep = energy_lower_bound_experiment(gamma, o.trials, lb);
    double converged = 0.0, worst_res = 0.0;
    for (const auto& t : rep.trials) {
        converged += t.converged ? 1.0 : 0.0;
        worst_res = std::max(worst_res, t.el_residual);
    }
    return {gamma, rep.min_energy, explicit_energy(2, gamma), explicit_energy(1, gamma), converged,
            static_cast<double>(o.trials), worst_res};
}

}  // namespace

SweepFamily sweep_family_from_name(std::string_view name) {
    if (name == "phi_lambda") return SweepFamily::PhiLambda;
    if (name == "psi_tau") return SweepFamily::PsiTau;
    if (name == "gamma_energy") return SweepFamily::GammaEnergy;
    throw std::invalid_argument("unknown sweep family '" + std::string(name) +
                                "' (expected phi_lambda, psi_tau or gamma_energy)");
}

std::vector<double> sweep_parameters(double from, double to, std::size_t steps) {
    if (steps == 0) throw std::invalid_argument("range needs at least one step");
    if (!std::isfinite(from) || !std::isfinite(to)) throw std::invalid_argument("range must be finite");
    if (steps > 1 && !(to > from)) throw std::invalid_argument("range needs from < to");
    std::vector<double> out(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        out[i] = steps == 1 ? from : from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    return out;
}

SweepTable run_sweep(const SweepOptions& o) {
    const std::vector<double> params = sweep_parameters(o.from, o.to, o.steps);
    if (o.family == SweepFamily::GammaEnergy && params.front() < kTwoPi) {
        throw std::invalid_argument("gamma_energy needs gamma >= 2*pi");
    }
    if (o.family == SweepFamily::PhiLambda && !(params.front() > 0.0)) {
        throw std::invalid_argument("phi_lambda needs lambda > 0");
    }
    SweepTable table;
    switch (o.family) {
        case SweepFamily::PhiLambda:
            table.columns = {"lambda", "E_G", "E_G_star", "E_G_star_closed_form", "lambda_min", "n_B", "n_SB", "closure_defect"};
            break;
        case SweepFamily::PsiTau:
            table.columns = {"tau", "E_G", "E_G_star", "lambda_min", "n_B", "n_SB", "closure_defect"};
            break;
        case SweepFamily::GammaEnergy:
            table.columns = {"gamma", "min_energy", "explicit_energy_n2", "explicit_energy_n1", "converged", "trials", "max_el_residual"};
            break;
    }
    table.rows.resize(params.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < params.size(); i = next++) {
            try {
                switch (o.family) {
                    case SweepFamily::PhiLambda: table.rows[i] = lambda_row(params[i], o.grid); break;
                    case SweepFamily::PsiTau: table.rows[i] = tau_row(params[i], o.grid); break;
                    case SweepFamily::GammaEnergy: table.rows[i] = gamma_row(params[i], o, i); break;
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(o.threads, static_cast<unsigned>(params.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return table;
}

void write_csv(std::ostream& out, const SweepTable& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
        out << "\n";
    }
}

}  // namespace ovalkit::cli
