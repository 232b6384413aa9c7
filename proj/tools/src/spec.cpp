#include "ovalkit_cli/spec.hpp"

#include <cmath>
#include <json.hpp>
#include <set>

#include "ovalkit/functionals.hpp"
#include "ovalkit/grid.hpp"
#include "ovalkit/variational.hpp"

namespace ovalkit::cli {

using nlohmann::json;

namespace {

struct KindInfo {
    CurveKind kind;
    std::string_view name;
    std::set<std::string> required;
    std::set<std::string> optional;
};

const std::vector<KindInfo>& kinds() {
    static const std::vector<KindInfo> table = {
        {CurveKind::Mobius, "mobius", {"matrix"}, {}},
        {CurveKind::USamples, "u_samples", {"samples"}, {"offset"}},
        {CurveKind::KappaSamples, "kappa_samples", {"samples"}, {}},
        {CurveKind::PhiLambda, "phi_lambda", {"lambda"}, {}},
        {CurveKind::PsiTau, "psi_tau", {"tau"}, {}},
        {CurveKind::PsiTauLambda, "psi_tau_lambda", {"tau", "lambda"}, {}},
        {CurveKind::ExplicitOde, "explicit_ode", {"n", "gamma"}, {"theta0"}},
    };
    return table;
}

const KindInfo& info(CurveKind kind) {
    for (const auto& k : kinds()) {
        if (k.kind == kind) return k;
    }
    throw std::logic_error("unknown curve kind");
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SpecError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw SpecError(path, "must be finite");
    return v;
}

std::vector<double> number_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw SpecError(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

CurveParams parse_params(CurveKind kind, const json& p, std::vector<std::string>& notes) {
    const KindInfo& k = info(kind);
    if (!p.is_object()) throw SpecError("params", "expected an object");
    for (const auto& [key, value] : p.items()) {
        if (!k.required.count(key) && !k.optional.count(key)) {
            throw SpecError("params." + key, "unknown field for kind " + std::string(k.name));
        }
    }
    for (const auto& key : k.required) {
        if (!p.contains(key)) throw SpecError("params." + key, "missing required field");
    }

    CurveParams out;
    if (p.contains("matrix")) {
        const auto m = number_array(p["matrix"], "params.matrix");
        if (m.size() != 4) throw SpecError("params.matrix", "expected 4 entries [a, b, c, d]");
        const double det = m[0] * m[3] - m[1] * m[2];
        if (!(det > 0.0)) throw SpecError("params.matrix", "determinant must be > 0");
        const double s = 1.0 / std::sqrt(det);
        out.matrix = std::array<double, 4>{m[0] * s, m[1] * s, m[2] * s, m[3] * s};
        if (std::abs(det - 1.0) > 1e-12) {
            notes.push_back("params.matrix: renormalized to det 1 (determinant was " +
                            std::to_string(det) + ")");
        }
    }
    if (p.contains("samples")) {
        out.samples = number_array(p["samples"], "params.samples");
        if (kind == CurveKind::KappaSamples) {
            double total = 0.0;
            for (double v : *out.samples) total += v;
            if (!(total > 0.0)) throw SpecError("params.samples", "curvature must have positive total");
        }
    }
    if (p.contains("offset")) out.offset = number(p["offset"], "params.offset");
    if (p.contains("lambda")) {
        out.lambda = number(p["lambda"], "params.lambda");
        if (!(*out.lambda > 0.0)) throw SpecError("params.lambda", "lambda must be > 0");
    }
    if (p.contains("tau")) out.tau = number(p["tau"], "params.tau");
    if (p.contains("n")) {
        const double n = number(p["n"], "params.n");
        if (n < 1 || n != std::floor(n)) throw SpecError("params.n", "n must be a positive integer");
        out.n = static_cast<int>(n);
    }
    if (p.contains("gamma")) {
        out.gamma = number(p["gamma"], "params.gamma");
        if (*out.gamma < kTwoPi) throw SpecError("params.gamma", "gamma must be >= 2*pi");
    }
    if (p.contains("theta0")) out.theta0 = number(p["theta0"], "params.theta0");
    if (kind == CurveKind::ExplicitOde && !out.theta0) {
        out.theta0 = 0.0;
        notes.push_back("params.theta0: defaulted to 0");
    }
    if (kind == CurveKind::USamples && !out.offset) {
        out.offset = 0.0;
        notes.push_back("params.offset: defaulted to 0");
    }
    return out;
}

}  // namespace

std::string_view kind_name(CurveKind kind) { return info(kind).name; }

ParsedSpec parse_spec(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError("", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SpecError("", "expected a JSON object");
    static const std::set<std::string> fields = {"kind", "params", "length", "base_point", "grid",
                                                 "mollify_eps"};
    for (const auto& [key, value] : doc.items()) {
        if (!fields.count(key)) throw SpecError(key, "unknown field");
    }

    ParsedSpec out;
    CurveSpec& s = out.spec;
    if (!doc.contains("kind") || !doc["kind"].is_string()) throw SpecError("kind", "missing or not a string");
    const std::string kind = doc["kind"].get<std::string>();
    bool found = false;
    for (const auto& k : kinds()) {
        if (k.name == kind) {
            s.kind = k.kind;
            found = true;
        }
    }
    if (!found) throw SpecError("kind", "unknown kind '" + kind + "'");
    s.params = parse_params(s.kind, doc.contains("params") ? doc["params"] : json::object(), out.notes);

    if (doc.contains("length")) {
        s.length = number(doc["length"], "length");
        if (!(s.length > 0.0)) throw SpecError("length", "length must be > 0");
    } else {
        out.notes.push_back("length: defaulted to 2*pi");
    }
    if (doc.contains("base_point")) {
        const auto b = number_array(doc["base_point"], "base_point");
        if (b.size() != 2) throw SpecError("base_point", "expected [x, y]");
        s.base_point = {b[0], b[1]};
    } else {
        out.notes.push_back("base_point: defaulted to [1, 0]");
    }
    if (doc.contains("grid")) {
        const double g = number(doc["grid"], "grid");
        if (g != std::floor(g) || g < 16 || static_cast<long long>(g) % 2 != 0) {
            throw SpecError("grid", "grid must be an even integer >= 16");
        }
        s.grid = static_cast<std::size_t>(g);
    } else if (s.params.samples) {
        s.grid = s.params.samples->size();
        out.notes.push_back("grid: taken from params.samples (" + std::to_string(s.grid) + ")");
    } else {
        out.notes.push_back("grid: defaulted to " + std::to_string(kDefaultGridSize));
    }
    if (s.params.samples && s.params.samples->size() != s.grid) {
        throw SpecError("params.samples", "expected " + std::to_string(s.grid) + " samples, got " +
                                              std::to_string(s.params.samples->size()));
    }
    if (s.params.samples && (s.grid < 16 || s.grid % 2 != 0)) {
        throw SpecError("params.samples", "sample count must be even and >= 16");
    }
    if (doc.contains("mollify_eps") && !doc["mollify_eps"].is_null()) {
        s.mollify_eps = number(doc["mollify_eps"], "mollify_eps");
        if (!(*s.mollify_eps > 0.0)) throw SpecError("mollify_eps", "must be > 0");
    }
    return out;
}

std::string serialize_spec(const CurveSpec& s) {
    json p = json::object();
    const CurveParams& q = s.params;
    if (q.matrix) p["matrix"] = *q.matrix;
    if (q.samples) p["samples"] = *q.samples;
    if (q.offset) p["offset"] = *q.offset;
    if (q.lambda) p["lambda"] = *q.lambda;
    if (q.tau) p["tau"] = *q.tau;
    if (q.n) p["n"] = *q.n;
    if (q.gamma) p["gamma"] = *q.gamma;
    if (q.theta0) p["theta0"] = *q.theta0;
    json doc = {{"kind", std::string(kind_name(s.kind))},
                {"params", p},
                {"length", s.length},
                {"base_point", {s.base_point.x, s.base_point.y}},
                {"grid", s.grid}};
    if (s.mollify_eps) doc["mollify_eps"] = *s.mollify_eps;
    return doc.dump(2);
}

namespace {

CircleDiffeo family_diffeo(const CurveSpec& s, Family family, FamilyParams fp) {
    if (s.mollify_eps) {
        const std::size_t fine = std::max(kFineGrid, s.grid);
        if (fine % s.grid != 0) throw SpecError("grid", "must divide the fine grid for mollification");
        return mollified_family(family, fp, *s.mollify_eps, s.grid, fine);
    }
    return make_family(family, fp, s.grid);
}

}  // namespace

BuiltCurve build_curve(const CurveSpec& s) {
    const CurveParams& p = s.params;
    std::optional<CircleDiffeo> phi;
    switch (s.kind) {
        case CurveKind::Mobius: {
            const auto& m = *p.matrix;
            phi = mobius_diffeo(MobiusElement::normalized(m[0], m[1], m[2], m[3]), s.grid);
            break;
        }
        case CurveKind::USamples:
            phi = CircleDiffeo::from_log_slope(GridFunction(*p.samples), p.offset.value_or(0.0));
            break;
        case CurveKind::KappaSamples: {
            GridFunction kappa(*p.samples);
            if (s.mollify_eps) kappa = mollify(kappa, *s.mollify_eps);
            DegreeOneCurve curve = from_curvature(kappa, s.base_point, s.length);
            if (curve.strictly_convex()) phi = induced_diffeo(curve);
            return {phi, curve};
        }
        case CurveKind::PhiLambda:
            phi = make_family(Family::PhiLambda, {*p.lambda, 0.0}, s.grid);
            break;
        case CurveKind::PsiTau:
            phi = family_diffeo(s, Family::PsiTau, {1.0, *p.tau});
            break;
        case CurveKind::PsiTauLambda:
            phi = family_diffeo(s, Family::PsiTauLambda, {*p.lambda, *p.tau});
            break;
        case CurveKind::ExplicitOde:
            phi = CircleDiffeo::from_log_slope(
                explicit_solution(*p.n, *p.gamma, p.theta0.value_or(0.0), s.grid));
            break;
    }
    // Kinked families were already mollified on the fine grid.
    const bool kinked = s.kind == CurveKind::PsiTau || s.kind == CurveKind::PsiTauLambda;
    if (s.mollify_eps && !kinked) phi = mollify_diffeo(*phi, *s.mollify_eps);
    return {phi, from_diffeo(*phi, s.base_point, s.length)};
}

}  // namespace ovalkit::cli
