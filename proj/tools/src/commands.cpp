#include "ovalkit_cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ovalkit/functionals.hpp"
#include "ovalkit/sampling.hpp"
#include "ovalkit/spectral.hpp"
#include "ovalkit/variational.hpp"
#include "ovalkit_cli/export.hpp"
#include "ovalkit_cli/report.hpp"
#include "ovalkit_cli/spec.hpp"
#include "ovalkit_cli/suites.hpp"

namespace ovalkit::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void emit(const Context& ctx, const Report& rep) {
    if (ctx.json) print_json(*ctx.out, rep);
    else print_table(*ctx.out, rep);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    return f;
}

GridFunction read_samples(const std::string& path, std::size_t n) {
    std::string text = read_text(path);
    for (char& c : text) {
        if (c == ',' || c == ';') c = ' ';
    }
    std::istringstream in(text);
    std::vector<double> v{std::istream_iterator<double>(in), std::istream_iterator<double>()};
    if (!in.eof()) throw InvalidInput(path + ": expected whitespace- or comma-separated numbers");
    if (v.size() != n) {
        throw InvalidInput(path + ": expected " + std::to_string(n) + " samples, got " + std::to_string(v.size()));
    }
    return GridFunction(std::move(v));
}

ParsedSpec load_spec(const Context& ctx, const std::string& path, Report& rep) {
    ParsedSpec p = parse_spec(read_text(path));
    for (const auto& n : p.notes) rep.notes.push_back(n);
    (void)ctx;
    return p;
}

double balance_count(const BalanceReport& b) { return b.n_B ? static_cast<double>(*b.n_B) : kInf; }

}  // namespace

std::string read_text(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

int cmd_eval(const Context& ctx, const std::string& spec_path, const std::optional<std::string>& f_path) {
    Report rep;
    rep.title = "eval";
    rep.tolerance_profile = ctx.tol.profile;
    const ParsedSpec p = load_spec(ctx, spec_path, rep);
    const BuiltCurve built = build_curve(p.spec);
    const DegreeOneCurve& c = built.curve;
    rep.rows.push_back(info_row("length", c.length()));
    rep.rows.push_back(info_row("grid", static_cast<double>(c.size())));
    rep.rows.push_back(info_row("strictly_convex", c.strictly_convex() ? 1.0 : 0.0));
    rep.rows.push_back(info_row("closure_defect", closure_defect(c), "|σ(2π) - σ(0)|"));
    if (!c.strictly_convex()) {
        throw PreconditionError("E_G and E_G* are defined only for strictly convex curves; "
                                "the curvature of this spec is not positive everywhere");
    }
    const auto g = energy_G(c);
    const auto gs = energy_G_star(c);
    rep.rows.push_back(info_row("E_G", g.total, "∫ |∇κ|²/(4κ³) - (2π/L)²/κ ds + 2π"));
    rep.rows.push_back(info_row("E_G_form_gap", g.form_gap(), "definition vs Schwarzian form"));
    rep.rows.push_back(info_row("E_G_star", gs.total, "∫ |∇κ|²/(4κ²) - κ² ds + (2π)²/L"));
    rep.rows.push_back(info_row("E_G_star_form_gap", gs.form_gap(), "definition vs Schwarzian form"));
    const auto sp = lowest_eigenpair(c);
    rep.rows.push_back(info_row("lambda_min", sp.lambda_min, "lowest eigenvalue of -Δ + κ²"));
    rep.rows.push_back(info_row("eigen_residual", sp.residual));
    const CircleDiffeo& phi = *built.diffeo;
    const auto b = balance_points(phi);
    rep.rows.push_back(info_row("n_B", balance_count(b), "balance points (inf when saturated)"));
    rep.rows.push_back(info_row("n_SB", static_cast<double>(b.n_SB), "stable balance points"));
    rep.rows.push_back(info_row("saturated", b.saturated ? 1.0 : 0.0));
    rep.rows.push_back(info_row("mobius_defect_max", mobius_defect(phi).max_abs(), "max |S + 2φ'² - 2|"));
    if (f_path) {
        const GridFunction f = read_samples(*f_path, c.size());
        rep.rows.push_back(info_row("E_S", energy_S(c, f).total, "∫ |∇f|² + κ²f² - (2π/L)²f² ds"));
        rep.rows.push_back(info_row("E_S_star", energy_S_star(c, f).total, "∫ |∇f|²/κ - κf² + (2π/L)²f²/κ ds"));
    }
    emit(ctx, rep);
    return kExitOk;
}

int cmd_verify(const Context& ctx, const std::string& suite) {
    const Report rep = run_suite(suite_from_name(suite), ctx.tol, ctx.seed);
    emit(ctx, rep);
    return rep.failures() == 0 ? kExitOk : kExitFailure;
}

int cmd_sweep(const Context& ctx, SweepOptions options, const std::optional<std::string>& output) {
    options.threads = ctx.threads;
    options.seed = ctx.seed;
    const SweepTable table = run_sweep(options);
    if (output) {
        std::ofstream f = open_output(*output);
        write_csv(f, table);
        if (!f) throw std::runtime_error("failed writing '" + *output + "'");
    } else {
        write_csv(*ctx.out, table);
    }
    return kExitOk;
}

int cmd_export(const Context& ctx, const std::string& spec_path, const std::string& format,
               const std::string& output) {
    if (format != "svg" && format != "csv") throw InvalidInput("format must be svg or csv");
    Report rep;
    const ParsedSpec p = load_spec(ctx, spec_path, rep);
    const CurveSamples s = sample_curve(build_curve(p.spec).curve);
    std::ofstream f = open_output(output);
    if (format == "svg") write_svg(f, s);
    else write_curve_csv(f, s);
    if (!f) throw std::runtime_error("failed writing '" + output + "'");
    for (const auto& n : rep.notes) *ctx.err << "note: " << n << "\n";
    return kExitOk;
}

int cmd_minimize(const Context& ctx, const MinimizeCliOptions& o) {
    if (o.gamma && *o.gamma < kTwoPi) throw InvalidInput("gamma must be >= 2*pi");
    MinimizeOptions mo;
    mo.step = o.step;
    mo.tol = o.tol;
    mo.max_iter = o.steps;
    if (o.metric == "sobolev") mo.metric = Metric::Sobolev;
    else if (o.metric == "l2") mo.metric = Metric::L2;
    else throw InvalidInput("metric must be sobolev or l2");

    std::vector<Constraint> cs{Constraint::mass()};
    if (o.gamma) cs.push_back(Constraint::gamma(*o.gamma));
    if (o.symmetric) cs.push_back(Constraint::symmetry());
    Rng rng(ctx.seed);
    const GridFunction u0 = random_trig_polynomial(rng, o.grid, {6, 0.5, o.symmetric});
    const MinimizeResult r = minimize(u0, cs, mo);

    Report rep;
    rep.title = "minimize";
    rep.tolerance_profile = ctx.tol.profile;
    rep.rows.push_back(info_row("energy", r.energy, "E[u] = ∫ ¼u'² - e^{2u}"));
    rep.rows.push_back(info_row("alpha", r.alpha));
    rep.rows.push_back(info_row("beta", r.beta));
    rep.rows.push_back(info_row("el_residual", r.el_residual));
    rep.rows.push_back(info_row("eta_variance", r.eta_variance));
    rep.rows.push_back(info_row("eta_mean", r.eta_mean));
    rep.rows.push_back(info_row("iterations", static_cast<double>(r.iterations)));
    rep.rows.push_back(info_row("gradient_norm", r.gradient_norm));
    rep.rows.push_back(info_row("u_star_max_abs", r.u_star.max_abs()));
    rep.rows.push_back(info_row("mobius_defect_max", mobius_defect(CircleDiffeo::from_log_slope(r.u_star)).max_abs()));
    const auto match = classify_critical_point(r.u_star);
    rep.rows.push_back(info_row("nearest_explicit_n", match.n));
    rep.rows.push_back(info_row("nearest_explicit_distance", match.distance));
    rep.rows.push_back(above("converged", r.converged ? 1.0 : 0.0, 1.0, "projected gradient norm below tol"));
    rep.notes.push_back("seed " + std::to_string(ctx.seed) + ", grid " + std::to_string(o.grid) +
                        ", step " + format_number(o.step) + ", tol " + format_number(o.tol) +
                        ", max_iter " + std::to_string(o.steps) + ", metric " + o.metric);
    if (o.trace) {
        std::ofstream f = open_output(*o.trace);
        f << "iteration,energy,gradient_norm\n";
        for (const auto& t : r.trace) {
            f << t.iteration << "," << format_number(t.energy) << "," << format_number(t.gradient_norm) << "\n";
        }
        if (!f) throw std::runtime_error("failed writing '" + *o.trace + "'");
    }
    emit(ctx, rep);
    return r.converged ? kExitOk : kExitFailure;
}

int cmd_spectrum(const Context& ctx, const std::string& spec_path, std::size_t k, std::size_t grid) {
    if (k == 0) throw InvalidInput("k must be positive");
    Report rep;
    rep.title = "spectrum";
    rep.tolerance_profile = ctx.tol.profile;
    const ParsedSpec p = load_spec(ctx, spec_path, rep);
    const DegreeOneCurve c = build_curve(p.spec).curve;
    const auto ev = lowest_eigenvalues(c, k, grid);
    for (std::size_t i = 0; i < ev.size(); ++i) rep.rows.push_back(info_row("lambda_" + std::to_string(i), ev[i]));
    rep.rows.push_back(info_row("ground_state_residual", lowest_eigenpair(c, grid).residual));
    emit(ctx, rep);
    return kExitOk;
}

int cmd_counterexample(const Context& ctx, double tau, double lambda, double eps, std::size_t grid) {
    if (!(std::abs(tau) > 0.0)) throw InvalidInput("--tau must be nonzero");
    if (!(lambda > 1.0)) throw InvalidInput("--lambda must be > 1");
    if (!(eps > 0.0)) throw InvalidInput("--eps must be > 0");
    CounterexampleOptions o;
    o.n = grid;
    const auto r = counterexample(tau, lambda, eps, o);
    Report rep;
    rep.title = "counterexample";
    rep.tolerance_profile = ctx.tol.profile;
    const GridFunction f = curvature(r.curve).map([](double k) { return 1.0 / std::sqrt(k); });
    rep.rows.push_back(info_row("strictly_convex", r.curve.strictly_convex() ? 1.0 : 0.0));
    rep.rows.push_back(info_row("closure_defect", closure_defect(r.curve)));
    rep.rows.push_back(info_row("eigen_residual", r.spectrum.residual));
    rep.rows.push_back(info_row("E_S_kappa_inv_sqrt", energy_S(r.curve, f).total, "E_S(σ, κ^{-1/2}) = E_G(σ)"));
    rep.rows.push_back(info_row("n_B", balance_count(r.balance), "inf when saturated"));
    rep.rows.push_back(info_row("n_SB", static_cast<double>(r.balance.n_SB)));
    rep.rows.push_back(info_row("saturated", r.balance.saturated ? 1.0 : 0.0));
    ReportRow lm = below("lambda_min", r.spectrum.lambda_min, 1.0, "ground state below the circle value");
    lm.passed = r.spectrum.lambda_min < 1.0;
    rep.rows.push_back(lm);
    emit(ctx, rep);
    return rep.failures() == 0 ? kExitOk : kExitFailure;
}

}  // namespace ovalkit::cli
