#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <unistd.h>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "ovalkit/diffeo.hpp"
#include "ovalkit_cli/app.hpp"
#include "ovalkit_cli/export.hpp"
#include "ovalkit_cli/report.hpp"
#include "ovalkit_cli/spec.hpp"
#include "ovalkit_cli/sweep.hpp"
#include "ovalkit_cli/tolerances.hpp"

namespace fs = std::filesystem;
using namespace ovalkit;
using namespace ovalkit::cli;

namespace {

struct CmdResult {
    int code;
    std::string out, err;
};

CmdResult ovalkit_cmd(std::vector<std::string> args) {
    args.insert(args.begin(), "ovalkit");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("ovalkit_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name, const std::string& content = {}) const {
        const fs::path p = path_ / name;
        if (!content.empty()) std::ofstream(p) << content;
        return p.string();
    }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// Rows of a --json report keyed by name.
std::map<std::string, double> json_rows(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    std::map<std::string, double> rows;
    for (const auto& r : j.at("rows")) {
        const auto& v = r.at("value");
        rows[r.at("name").get<std::string>()] =
            v.is_number() ? v.get<double>() : std::numeric_limits<double>::infinity();
    }
    return rows;
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::vector<std::string>* header = nullptr) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (header) {
        std::istringstream h(line);
        std::string cell;
        while (std::getline(h, cell, ',')) header->push_back(cell);
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::istringstream l(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(l, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::runtime_error("missing column " + name);
    return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

TEST(ParseSpec, MobiusRenormalizedAndLogged) {
    const auto p = parse_spec(R"({"kind":"mobius","params":{"matrix":[1.4142,0,0,0.7071]}})");
    EXPECT_EQ(p.spec.kind, CurveKind::Mobius);
    const auto& m = *p.spec.params.matrix;
    EXPECT_NEAR(m[0] * m[3] - m[1] * m[2], 1.0, 1e-14);
    EXPECT_NEAR(m[0] / m[3], 1.4142 / 0.7071, 1e-12);
    bool logged = false;
    for (const auto& n : p.notes) logged = logged || n.find("renormalized") != std::string::npos;
    EXPECT_TRUE(logged);
    EXPECT_DOUBLE_EQ(p.spec.length, kTwoPi);
    EXPECT_EQ(p.spec.grid, 256u);
    EXPECT_EQ(p.spec.base_point.x, 1.0);
    EXPECT_EQ(p.spec.base_point.y, 0.0);
}

TEST(ParseSpec, PhiLambda) {
    const auto p = parse_spec(R"({"kind":"phi_lambda","params":{"lambda":2}})");
    EXPECT_EQ(p.spec.kind, CurveKind::PhiLambda);
    EXPECT_EQ(*p.spec.params.lambda, 2.0);
    EXPECT_FALSE(p.spec.params.matrix.has_value());
}

TEST(ParseSpec, NegativeLambdaRejectedWithPath) {
    try {
        parse_spec(R"({"kind":"phi_lambda","params":{"lambda":-1}})");
        FAIL() << "expected SpecError";
    } catch (const SpecError& e) {
        EXPECT_EQ(e.path(), "params.lambda");
        EXPECT_NE(std::string(e.what()).find("lambda must be > 0"), std::string::npos);
    }
}

TEST(ParseSpec, StructuredErrors) {
    const auto path_of = [](const char* text) -> std::string {
        try {
            parse_spec(text);
        } catch (const SpecError& e) {
            return e.path();
        }
        return "<accepted>";
    };
    EXPECT_EQ(path_of(R"({"kind":"mobius","params":{"matrix":[1,0,0,1]},"colour":1})"), "colour");
    EXPECT_EQ(path_of(R"({"kind":"phi_lambda","params":{"lambda":2,"tau":1}})"), "params.tau");
    EXPECT_EQ(path_of(R"({"kind":"spiral","params":{}})"), "kind");
    EXPECT_EQ(path_of(R"({"kind":"phi_lambda","params":{}})"), "params.lambda");
    EXPECT_EQ(path_of(R"({"kind":"phi_lambda","params":{"lambda":2},"length":0})"), "length");
    EXPECT_EQ(path_of(R"({"kind":"phi_lambda","params":{"lambda":2},"grid":255})"), "grid");
    EXPECT_EQ(path_of(R"({"kind":"explicit_ode","params":{"n":0,"gamma":7}})"), "params.n");
    EXPECT_THROW(parse_spec("{not json"), InvalidInput);
}

TEST(ParseSpec, RoundTrip) {
    const char* texts[] = {
        R"({"kind":"mobius","params":{"matrix":[2,1,1,2]},"length":3.5,"base_point":[0.25,-1]})",
        R"({"kind":"phi_lambda","params":{"lambda":0.3}})",
        R"({"kind":"psi_tau","params":{"tau":-0.7},"mollify_eps":0.05,"grid":512})",
        R"({"kind":"psi_tau_lambda","params":{"tau":1,"lambda":1.05},"mollify_eps":0.05})",
        R"({"kind":"explicit_ode","params":{"n":2,"gamma":9.5,"theta0":0.1}})",
        R"({"kind":"u_samples","params":{"samples":[0.1,0,-0.1,0,0.1,0,-0.1,0,0.1,0,-0.1,0,0.1,0,-0.1,0],"offset":0.5}})",
    };
    for (const char* t : texts) {
        const CurveSpec s = parse_spec(t).spec;
        const auto again = parse_spec(serialize_spec(s));
        EXPECT_EQ(again.spec, s) << t;
        EXPECT_TRUE(again.notes.empty() || again.notes.size() <= 1) << t;
    }
}

TEST(Tolerances, ProfilesScale) {
    const auto d = tolerance_profile("default"), s = tolerance_profile("strict"), c = tolerance_profile("coarse");
    EXPECT_LT(s.cocycle, d.cocycle);
    EXPECT_GT(c.cocycle, d.cocycle);
    EXPECT_GT(s.non_mobius, d.non_mobius);
    EXPECT_LT(c.non_mobius, d.non_mobius);
    EXPECT_THROW(tolerance_profile("sloppy"), std::invalid_argument);
}

TEST(Eval, MobiusOvalIsEqualityCase) {
    TempDir dir;
    const auto spec = dir.file("m.json", R"({"kind":"mobius","params":{"matrix":[1.4142,0,0,0.7071]}})");
    const CmdResult r = ovalkit_cmd({"--json", "eval", spec});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = json_rows(r.out);
    EXPECT_NEAR(rows.at("E_G"), 0.0, 1e-8);
    EXPECT_NEAR(rows.at("E_G_star"), 0.0, 1e-8);
    EXPECT_NEAR(rows.at("lambda_min"), 1.0, 1e-8);
    EXPECT_LT(rows.at("closure_defect"), 1e-10);
    EXPECT_LT(rows.at("mobius_defect_max"), 1e-6);
    EXPECT_EQ(rows.at("saturated"), 1.0);
}

TEST(Eval, PhiLambdaRows) {
    TempDir dir;
    const auto spec = dir.file("p.json", R"({"kind":"phi_lambda","params":{"lambda":2}})");
    const CmdResult r = ovalkit_cmd({"--json", "eval", spec});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = json_rows(r.out);
    EXPECT_NEAR(rows.at("E_G_star"), -3.0 * kPi / 8.0, 1e-6);
    EXPECT_GT(rows.at("closure_defect"), 1.0);
    EXPECT_EQ(rows.at("n_B"), 2.0);
    EXPECT_EQ(rows.at("n_SB"), 2.0);
}

TEST(Eval, MollifiedPsiTau) {
    TempDir dir;
    const auto spec = dir.file("s.json", R"({"kind":"psi_tau","params":{"tau":1},"mollify_eps":0.02,"grid":1024})");
    const CmdResult r = ovalkit_cmd({"--json", "eval", spec});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = json_rows(r.out);
    EXPECT_NEAR(rows.at("E_G_star"), 0.0, 1e-2);
    EXPECT_EQ(rows.at("n_SB"), 0.0);
}

TEST(Eval, DensityEnergiesFromFile) {
    TempDir dir;
    const auto spec = dir.file("c.json", R"({"kind":"mobius","params":{"matrix":[1,0,0,1]},"grid":64})");
    std::string samples;
    for (int i = 0; i < 64; ++i) samples += std::to_string(std::cos(kTwoPi * i / 64)) + "\n";
    const auto f = dir.file("f.txt", samples);
    const CmdResult r = ovalkit_cmd({"--json", "eval", spec, "--f", f});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = json_rows(r.out);
    // Unit circle: E_S(cos) = ∫ sin² + cos² - cos² = π, and E_S* agrees since κ = 1.
    EXPECT_NEAR(rows.at("E_S"), kPi, 1e-4);
    EXPECT_NEAR(rows.at("E_S_star"), kPi, 1e-4);

    const auto short_f = dir.file("g.txt", "1 2 3\n");
    EXPECT_EQ(ovalkit_cmd({"eval", spec, "--f", short_f}).code, 2);
}

TEST(Eval, NonConvexExplainsPrecondition) {
    TempDir dir;
    std::string k = "[";
    for (int i = 0; i < 64; ++i) k += (i ? "," : "") + std::to_string(1.0 + 1.5 * std::cos(2.0 * kTwoPi * i / 64));
    k += "]";
    const auto spec = dir.file("k.json", R"({"kind":"kappa_samples","params":{"samples":)" + k + "}}");
    const CmdResult r = ovalkit_cmd({"eval", spec});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("convex"), std::string::npos);
}

TEST(Eval, InvalidSpecIsUsageError) {
    TempDir dir;
    const auto spec = dir.file("bad.json", R"({"kind":"phi_lambda","params":{"lambda":-1}})");
    const CmdResult r = ovalkit_cmd({"eval", spec});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("lambda must be > 0"), std::string::npos);
}

TEST(Sweep, PhiLambdaClosedFormColumn) {
    SweepOptions o;
    o.family = SweepFamily::PhiLambda;
    o.from = 1.0;
    o.to = 3.0;
    o.steps = 21;
    o.threads = 4;
    const SweepTable t = run_sweep(o);
    ASSERT_EQ(t.rows.size(), 21u);
    const std::size_t lam = column(t.columns, "lambda"), gs = column(t.columns, "E_G_star");
    for (const auto& row : t.rows) {
        const double l = row[lam];
        EXPECT_NEAR(row[gs], 1.5 * kPi * (1.0 - 0.5 * (l + 1.0 / l)), 1e-6) << l;
    }
    EXPECT_DOUBLE_EQ(t.rows.front()[lam], 1.0);
    EXPECT_DOUBLE_EQ(t.rows.back()[lam], 3.0);
}

TEST(Sweep, PsiTauNearZero) {
    SweepOptions o;
    o.family = SweepFamily::PsiTau;
    o.from = -1.0;
    o.to = 1.0;
    o.steps = 5;
    o.threads = 2;
    const SweepTable t = run_sweep(o);
    const std::size_t gs = column(t.columns, "E_G_star");
    for (const auto& row : t.rows) EXPECT_NEAR(row[gs], 0.0, 2e-3);
}

TEST(Sweep, GammaEnergyFloor) {
    SweepOptions o;
    o.family = SweepFamily::GammaEnergy;
    o.from = kTwoPi;
    o.to = 2.0 * kTwoPi;
    o.steps = 3;
    o.threads = 3;
    o.trials = 3;
    const SweepTable t = run_sweep(o);
    const std::size_t e = column(t.columns, "min_energy");
    for (const auto& row : t.rows) EXPECT_GE(row[e], -kTwoPi - 1e-3);
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
    TempDir dir;
    const auto a = dir.file("a.csv"), b = dir.file("b.csv");
    ASSERT_EQ(ovalkit_cmd({"--threads", "1", "sweep", "gamma_energy", "--range", "6.3", "9", "3", "--trials", "2",
                           "-o", a}).code, 0);
    ASSERT_EQ(ovalkit_cmd({"sweep", "gamma_energy", "--range", "6.3", "9", "3", "--trials", "2", "-o", b,
                           "--threads", "3"}).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_FALSE(slurp(a).empty());
}

TEST(Sweep, InvalidRange) {
    EXPECT_THROW(sweep_parameters(1.0, 3.0, 0), std::invalid_argument);
    EXPECT_THROW(sweep_parameters(1.0, NAN, 3), std::invalid_argument);
    EXPECT_EQ(ovalkit_cmd({"sweep", "phi_lambda", "--range", "1", "3", "0"}).code, 2);
    EXPECT_EQ(ovalkit_cmd({"sweep", "phi_lambda", "--range", "1", "3"}).code, 2);
    EXPECT_EQ(ovalkit_cmd({"sweep", "spiral", "--range", "1", "3", "4"}).code, 2);
}

TEST(Export, CircleSvgClosed) {
    TempDir dir;
    const auto spec = dir.file("c.json", R"({"kind":"mobius","params":{"matrix":[1,0,0,1]}})");
    const auto svg = dir.file("c.svg");
    ASSERT_EQ(ovalkit_cmd({"export", spec, "--format", "svg", "-o", svg}).code, 0);
    const std::string text = slurp(svg);
    EXPECT_NE(text.find("<svg"), std::string::npos);
    EXPECT_NE(text.find("viewBox"), std::string::npos);
    EXPECT_EQ(text.find("<polyline"), text.rfind("<polyline"));

    const auto s = sample_curve(build_curve(parse_spec(slurp(spec)).spec).curve);
    ASSERT_EQ(s.points.size(), 4u * 256u + 1u);
    EXPECT_LT(std::hypot(s.points.back().x - s.points.front().x, s.points.back().y - s.points.front().y), 1e-10);
    for (const auto& p : s.points) EXPECT_NEAR(std::hypot(p.x, p.y), 1.0, 1e-10);
}

TEST(Export, CsvColumnsAndOpenCurve) {
    TempDir dir;
    const auto spec = dir.file("p.json", R"({"kind":"phi_lambda","params":{"lambda":2}})");
    const auto csv = dir.file("p.csv");
    ASSERT_EQ(ovalkit_cmd({"export", spec, "--format", "csv", "--output", csv}).code, 0);
    std::vector<std::string> header;
    const auto rows = parse_csv(slurp(csv), &header);
    EXPECT_EQ(header, (std::vector<std::string>{"t", "x", "y", "kappa"}));
    ASSERT_EQ(rows.size(), 4u * 256u + 1u);
    EXPECT_GT(std::hypot(rows.back()[1] - rows.front()[1], rows.back()[2] - rows.front()[2]), 1.0);
}

TEST(Export, OvalAspectRatioGrowsWithLambda) {
    double previous = 0.0;
    for (double s : {1.0, 1.5, 2.0, 3.0, 5.0, 8.0}) {
        CurveSpec spec;
        spec.kind = CurveKind::Mobius;
        spec.params.matrix = std::array<double, 4>{s, 0.0, 0.0, 1.0 / s};
        spec.grid = 512;
        const Box b = bounding_box(sample_curve(build_curve(spec).curve).points);
        const double aspect = std::max(b.width(), b.height()) / std::min(b.width(), b.height());
        EXPECT_GT(aspect, previous) << s;
        previous = aspect;
    }
    EXPECT_GT(previous, 20.0);
}

TEST(Export, SvgGeometry) {
    CurveSpec spec;
    spec.params.matrix = std::array<double, 4>{1.0, 0.0, 0.0, 1.0};
    const auto s = sample_curve(build_curve(spec).curve);
    std::ostringstream out;
    write_svg(out, s);
    const std::string text = out.str();
    const auto vb = text.find("viewBox=\"") + 9;
    std::istringstream in(text.substr(vb));
    double x, y, w, h;
    in >> x >> y >> w >> h;
    // Unit circle: diameter 2, margin 5% of 2 on each side.
    EXPECT_NEAR(w, 2.2, 1e-9);
    EXPECT_NEAR(h, 2.2, 1e-9);
    EXPECT_NEAR(x, -1.1, 1e-9);
    const auto sw = text.find("stroke-width=\"") + 14;
    EXPECT_NEAR(std::stod(text.substr(sw)), 0.02, 1e-9);
}

TEST(Export, UnwritablePath) {
    TempDir dir;
    const auto spec = dir.file("c.json", R"({"kind":"mobius","params":{"matrix":[1,0,0,1]}})");
    const CmdResult r = ovalkit_cmd({"export", spec, "--format", "svg", "-o", "/nonexistent/dir/c.svg"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("cannot write"), std::string::npos);
}

TEST(Verify, OdeSuitePasses) {
    const CmdResult r = ovalkit_cmd({"--json", "verify", "ode"});
    EXPECT_EQ(r.code, 0) << r.out;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("failures").get<int>(), 0);
    for (const auto& row : j.at("rows")) EXPECT_TRUE(row.contains("tolerance")) << row.dump();
}

TEST(Verify, ExitStatusMatchesFailures) {
    Report rep;
    rep.rows.push_back(below("ok", 0.5, 1.0, "x"));
    EXPECT_EQ(rep.failures(), 0u);
    rep.rows.push_back(below("bad", 2.0, 1.0, "x"));
    rep.rows.push_back(below("nan", NAN, 1.0, "x"));
    EXPECT_EQ(rep.failures(), 2u);
    EXPECT_EQ(ovalkit_cmd({"verify", "everything"}).code, 2);
}

TEST(Minimize, SymmetricThreePiReachesFloor) {
    TempDir dir;
    const auto trace = dir.file("trace.csv");
    const CmdResult r = ovalkit_cmd({"--json", "minimize", "--symmetric", "--gamma", "9.4248", "--trace", trace});
    ASSERT_EQ(r.code, 0) << r.out << r.err;
    const auto rows = json_rows(r.out);
    EXPECT_NEAR(rows.at("energy"), -kTwoPi, 1e-3);
    EXPECT_EQ(rows.at("converged"), 1.0);
    std::vector<std::string> header;
    const auto t = parse_csv(slurp(trace), &header);
    EXPECT_EQ(header, (std::vector<std::string>{"iteration", "energy", "gradient_norm"}));
    ASSERT_GT(t.size(), 1u);
    EXPECT_NEAR(t.back()[1], rows.at("energy"), 1e-9);
}

TEST(Minimize, GammaTwoPiGivesZero) {
    const CmdResult r = ovalkit_cmd({"--json", "minimize", "--gamma", "6.2832"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LT(json_rows(r.out).at("u_star_max_abs"), 1e-2);
}

TEST(Minimize, DeterministicForSeed) {
    const CmdResult a = ovalkit_cmd({"--seed", "7", "minimize", "--gamma", "8"});
    const CmdResult b = ovalkit_cmd({"minimize", "--gamma", "8", "--seed", "7"});
    EXPECT_EQ(a.out, b.out);
}

TEST(Minimize, NonConvergenceExitsNonzero) {
    const CmdResult r = ovalkit_cmd({"--json", "minimize", "--gamma", "9", "--steps", "2"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(json_rows(r.out).at("converged"), 0.0);
}

TEST(Minimize, UsageErrors) {
    EXPECT_EQ(ovalkit_cmd({"minimize", "--no-such-flag"}).code, 2);
    EXPECT_EQ(ovalkit_cmd({"minimize", "--gamma", "3"}).code, 2);
    EXPECT_EQ(ovalkit_cmd({"minimize", "--metric", "h3"}).code, 2);
    EXPECT_EQ(ovalkit_cmd({}).code, 2);
    EXPECT_EQ(ovalkit_cmd({"--help"}).code, 0);
}

TEST(Spectrum, CircleEigenvalues) {
    TempDir dir;
    const auto spec = dir.file("c.json", R"({"kind":"mobius","params":{"matrix":[1,0,0,1]}})");
    const CmdResult r = ovalkit_cmd({"--json", "spectrum", spec, "-k", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = json_rows(r.out);
    const double expected[] = {1.0, 2.0, 2.0, 5.0, 5.0};
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(rows.at("lambda_" + std::to_string(i)), expected[i], 1e-8);
}

TEST(Counterexample, BelowOne) {
    const CmdResult r = ovalkit_cmd({"--json", "counterexample", "--tau", "1", "--lambda", "1.05", "--eps", "0.05"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = json_rows(r.out);
    EXPECT_NEAR(rows.at("lambda_min"), 0.8712356, 1e-6);
    EXPECT_EQ(rows.at("strictly_convex"), 1.0);
    EXPECT_EQ(ovalkit_cmd({"counterexample", "--tau", "0"}).code, 2);
    EXPECT_EQ(ovalkit_cmd({"counterexample", "--lambda", "0.9"}).code, 2);
}
