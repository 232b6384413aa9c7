#include "ovalkit_cli/app.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <thread>

#include "ovalkit/error.hpp"
#include "ovalkit_cli/commands.hpp"
#include "ovalkit_cli/spec.hpp"

namespace ovalkit::cli {

namespace {

unsigned env_threads() {
    const char* v = std::getenv("OVALKIT_THREADS");
    if (!v || !*v) return std::max(1u, std::thread::hardware_concurrency());
    const long n = std::stol(v);
    if (n < 1) throw InvalidInput("OVALKIT_THREADS must be a positive integer");
    return static_cast<unsigned>(n);
}

std::uint64_t env_seed() {
    const char* v = std::getenv("OVALKIT_SEED");
    if (!v || !*v) return 1;
    return std::stoull(v);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical toolkit for convex curves, circle diffeomorphisms and their energies",
                 "ovalkit"};
    app.require_subcommand(1);

    bool json = false;
    std::string profile = "default";
    std::optional<unsigned> threads;
    std::optional<std::uint64_t> seed;
    app.add_flag("--json", json, "Machine-readable JSON report");
    app.add_option("--tol-profile", profile, "Tolerance profile")
        ->check(CLI::IsMember({"strict", "default", "coarse"}));
    app.add_option("--threads", threads, "Worker threads (default: OVALKIT_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Random seed (default: OVALKIT_SEED or 1)");

    std::string spec_path;
    std::optional<std::string> f_path;
    auto* eval = app.add_subcommand("eval", "Energies, spectrum and balance points of a curve spec");
    eval->add_option("spec", spec_path, "CurveSpec JSON file ('-' for stdin)")->required();
    eval->add_option("--f", f_path, "Samples of f (one per grid node) for E_S and E_S*");

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "Run an identity/inequality suite");
    verify->add_option("suite", suite, "identities | inequalities | ode | all")
        ->check(CLI::IsMember({"identities", "inequalities", "ode", "all"}));

    std::string family;
    std::vector<double> range;
    std::optional<std::string> sweep_out;
    SweepOptions sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
    sweep->add_option("family", family, "phi_lambda | psi_tau | gamma_energy")
        ->required()
        ->check(CLI::IsMember({"phi_lambda", "psi_tau", "gamma_energy"}));
    sweep->add_option("--range", range, "FROM TO STEPS")->expected(3)->required();
    sweep->add_option("--output,-o", sweep_out, "CSV path (default: stdout)");
    sweep->add_option("--n-grid", sweep_opts.grid, "Grid size")->check(CLI::PositiveNumber);
    sweep->add_option("--trials", sweep_opts.trials, "Random starts per gamma (gamma_energy)")
        ->check(CLI::PositiveNumber);

    std::string format = "svg";
    std::string export_out;
    auto* exp = app.add_subcommand("export", "Write the curve as SVG or CSV");
    exp->add_option("spec", spec_path, "CurveSpec JSON file ('-' for stdin)")->required();
    exp->add_option("--format", format, "svg | csv")->check(CLI::IsMember({"svg", "csv"}));
    exp->add_option("--output,-o", export_out, "Output path")->required();

    MinimizeCliOptions min_opts;
    auto* mini = app.add_subcommand("minimize", "Constrained minimization of E[u]");
    mini->add_option("--gamma", min_opts.gamma, "Fix ∫e^{2u} = gamma (>= 2π)");
    mini->add_flag("--symmetric", min_opts.symmetric, "Restrict to u∘I = u");
    mini->add_option("--n-grid", min_opts.grid, "Grid size");
    mini->add_option("--steps", min_opts.steps, "Maximum iterations")->check(CLI::PositiveNumber);
    mini->add_option("--tol", min_opts.tol, "Projected gradient tolerance")->check(CLI::PositiveNumber);
    mini->add_option("--step", min_opts.step, "Initial step")->check(CLI::PositiveNumber);
    mini->add_option("--metric", min_opts.metric, "sobolev | l2")->check(CLI::IsMember({"sobolev", "l2"}));
    mini->add_option("--trace", min_opts.trace, "Trace CSV path");

    std::size_t k = 5, spec_grid = 0;
    auto* spectrum = app.add_subcommand("spectrum", "Lowest eigenvalues of -Δ + κ²");
    spectrum->add_option("spec", spec_path, "CurveSpec JSON file ('-' for stdin)")->required();
    spectrum->add_option("-k", k, "Number of eigenvalues")->check(CLI::PositiveNumber);
    spectrum->add_option("--n-grid", spec_grid, "Resample to this grid (default: spec grid)");

    double tau = 1.0, lambda = 1.05, eps = 0.05;
    std::size_t cx_grid = 512;
    auto* cx = app.add_subcommand("counterexample", "Smoothed conjugated boundary curve with λ_min < 1");
    cx->add_option("--tau", tau, "tau (nonzero)");
    cx->add_option("--lambda", lambda, "lambda (> 1)");
    cx->add_option("--eps", eps, "Mollifier width")->check(CLI::PositiveNumber);
    cx->add_option("--n-grid", cx_grid, "Grid size");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\nRun 'ovalkit --help' for usage.\n";
        return kExitUsage;
    }

    try {
        Context ctx;
        ctx.json = json;
        ctx.tol = tolerance_profile(profile);
        ctx.threads = threads ? *threads : env_threads();
        ctx.seed = seed ? *seed : env_seed();
        ctx.out = &out;
        ctx.err = &err;

        if (*eval) return cmd_eval(ctx, spec_path, f_path);
        if (*verify) return cmd_verify(ctx, suite);
        if (*sweep) {
            sweep_opts.family = sweep_family_from_name(family);
            if (range[2] < 1 || range[2] != std::floor(range[2])) {
                throw InvalidInput("--range STEPS must be a positive integer");
            }
            sweep_opts.from = range[0];
            sweep_opts.to = range[1];
            sweep_opts.steps = static_cast<std::size_t>(range[2]);
            return cmd_sweep(ctx, sweep_opts, sweep_out);
        }
        if (*exp) return cmd_export(ctx, spec_path, format, export_out);
        if (*mini) return cmd_minimize(ctx, min_opts);
        if (*spectrum) return cmd_spectrum(ctx, spec_path, k, spec_grid);
        if (*cx) return cmd_counterexample(ctx, tau, lambda, eps, cx_grid);
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace ovalkit::cli
