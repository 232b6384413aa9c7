#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ovalkit/curve.hpp"
#include "ovalkit/diffeo.hpp"
#include "ovalkit/error.hpp"

namespace ovalkit::cli {

enum class CurveKind { Mobius, USamples, KappaSamples, PhiLambda, PsiTau, PsiTauLambda, ExplicitOde };

std::string_view kind_name(CurveKind kind);

// Only the parameters that belong to `kind` are set.
struct CurveParams {
    std::optional<std::array<double, 4>> matrix;  // mobius, row-major, det 1 after parsing
    std::optional<std::vector<double>> samples;   // u_samples, kappa_samples
    std::optional<double> offset;                 // u_samples
    std::optional<double> lambda;                 // phi_lambda, psi_tau_lambda
    std::optional<double> tau;                    // psi_tau, psi_tau_lambda
    std::optional<int> n;                         // explicit_ode
    std::optional<double> gamma;                  // explicit_ode
    std::optional<double> theta0;                 // explicit_ode

    bool operator==(const CurveParams&) const = default;
};

struct CurveSpec {
    CurveKind kind = CurveKind::Mobius;
    CurveParams params;
    double length = kTwoPi;
    Vec2 base_point{1.0, 0.0};
    std::size_t grid = kDefaultGridSize;
    std::optional<double> mollify_eps;

    bool operator==(const CurveSpec& o) const {
        return kind == o.kind && params == o.params && length == o.length &&
               base_point.x == o.base_point.x && base_point.y == o.base_point.y &&
               grid == o.grid && mollify_eps == o.mollify_eps;
    }
};

// Invalid spec; path names the offending field, e.g. "params.lambda".
class SpecError : public InvalidInput {
public:
    SpecError(std::string path, const std::string& message)
        : InvalidInput(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct ParsedSpec {
    CurveSpec spec;
    std::vector<std::string> notes;  // defaults applied, renormalizations
};

ParsedSpec parse_spec(std::string_view text);
// Every field written explicitly; parse_spec(serialize_spec(s)).spec == s.
std::string serialize_spec(const CurveSpec& spec);

struct BuiltCurve {
    std::optional<CircleDiffeo> diffeo;  // absent for non-convex kappa samples
    DegreeOneCurve curve;
};

// Fine grid used when kinked families are mollified.
inline constexpr std::size_t kFineGrid = 16384;

BuiltCurve build_curve(const CurveSpec& spec);

}  // namespace ovalkit::cli
