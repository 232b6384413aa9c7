#include "ovalkit/curve.hpp"

#include <cmath>

#include "ovalkit/error.hpp"

namespace ovalkit {

namespace {

void require_length(double length) {
    if (!(length > 0.0) || !std::isfinite(length)) throw InvalidInput("curve length must be > 0");
}

void require_convex(const DegreeOneCurve& sigma, const char* what) {
    if (!sigma.strictly_convex()) {
        throw PreconditionError(std::string(what) + ": curve is not strictly convex");
    }
}

void require_mobius(const CircleDiffeo& phi, double tol, const char* what) {
    const double defect = mobius_defect(phi).max_abs();
    if (!(defect <= tol)) {
        throw PreconditionError(std::string(what) + ": argument is not Mobius (defect " +
                                std::to_string(defect) + ")");
    }
}

}  // namespace

DegreeOneCurve DegreeOneCurve::from_tangent_lift(GridFunction periodic_part, Vec2 base_point,
                                                 double length) {
    require_length(length);
    if (!std::isfinite(base_point.x) || !std::isfinite(base_point.y)) {
        throw InvalidInput("base point must be finite");
    }
    // a and a + 2πk describe the same curve; fix k by p(0) ∈ [-π, π).
    const double k = std::floor((periodic_part[0] + kPi) / kTwoPi);
    if (k != 0.0) periodic_part = periodic_part - GridFunction::constant(periodic_part.size(), k * kTwoPi);
    return DegreeOneCurve(std::move(periodic_part), base_point, length);
}

std::vector<double> DegreeOneCurve::tangent_angle() const {
    std::vector<double> a(size());
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = p_.node(j) + p_[j];
    return a;
}

GridFunction DegreeOneCurve::turning_rate() const { return derivative(p_) + 1.0; }

bool DegreeOneCurve::strictly_convex() const { return turning_rate().min() > 0.0; }

DegreeOneCurve from_diffeo(const CircleDiffeo& phi, Vec2 base_point, double length) {
    const std::vector<double> v = phi.node_values();
    std::vector<double> p(v.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
        p[j] = v[j] - GridFunction::node(p.size(), j) + 0.5 * kPi;
    }
    return DegreeOneCurve::from_tangent_lift(GridFunction(std::move(p)), base_point, length);
}

DegreeOneCurve from_curvature(const GridFunction& kappa, Vec2 base_point, double length) {
    const double m = integrate(kappa) / kTwoPi;
    if (!(m > 0.0)) throw InvalidInput("curvature must have positive total");
    const Antiderivative a = antiderivative(kappa * (1.0 / m) - 1.0);
    return DegreeOneCurve::from_tangent_lift(a.periodic_part, base_point, length);
}

std::vector<Vec2> positions(const DegreeOneCurve& sigma, std::span<const double> t) {
    const std::vector<double> a = sigma.tangent_angle();
    std::vector<double> c(a.size()), s(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        c[j] = std::cos(a[j]);
        s[j] = std::sin(a[j]);
    }
    const Antiderivative fc = antiderivative(GridFunction(std::move(c)));
    const Antiderivative fs = antiderivative(GridFunction(std::move(s)));
    const TrigInterpolant pc(fc.periodic_part), ps(fs.periodic_part);
    const double r = sigma.length() / kTwoPi;
    const Vec2 x0 = sigma.base_point();
    std::vector<Vec2> out;
    out.reserve(t.size());
    for (double ti : t) {
        out.push_back({x0.x + r * (fc.mean * ti + pc(ti)), x0.y + r * (fs.mean * ti + ps(ti))});
    }
    return out;
}

double closure_defect(const DegreeOneCurve& sigma) {
    const std::vector<double> a = sigma.tangent_angle();
    double sc = 0.0, ss = 0.0;
    for (double v : a) {
        sc += std::cos(v);
        ss += std::sin(v);
    }
    const double h = kTwoPi / static_cast<double>(a.size());
    return sigma.length() / kTwoPi * std::hypot(sc * h, ss * h);
}

GridFunction curvature(const DegreeOneCurve& sigma) {
    return sigma.turning_rate() * (kTwoPi / sigma.length());
}

CircleDiffeo induced_diffeo(const DegreeOneCurve& sigma) {
    const GridFunction rate = sigma.turning_rate();
    if (!(rate.min() > 0.0)) throw PreconditionError("induced diffeo: curve is not strictly convex");
    return CircleDiffeo::from_log_slope(rate.map([](double v) { return std::log(v); }),
                                        sigma.angle_periodic()[0] - 0.5 * kPi);
}

DegreeOneCurve dual(const DegreeOneCurve& sigma) {
    require_convex(sigma, "dual");
    return from_diffeo(invert(induced_diffeo(sigma)), sigma.base_point(), sigma.length());
}

DegreeOneCurve scaled(const DegreeOneCurve& sigma, double c) {
    require_length(c);
    const Vec2 x = sigma.base_point();
    return DegreeOneCurve::from_tangent_lift(sigma.angle_periodic(), {c * x.x, c * x.y},
                                             c * sigma.length());
}

DegreeOneCurve with_base_point(const DegreeOneCurve& sigma, Vec2 base_point) {
    return DegreeOneCurve::from_tangent_lift(sigma.angle_periodic(), base_point, sigma.length());
}

DegreeOneCurve resample(const DegreeOneCurve& sigma, std::size_t n) {
    return DegreeOneCurve::from_tangent_lift(resample(sigma.angle_periodic(), n),
                                             sigma.base_point(), sigma.length());
}

DegreeOneCurve act_right_unchecked(const DegreeOneCurve& sigma, const CircleDiffeo& phi) {
    if (phi.size() != sigma.size()) throw InvalidInput("act_right: grid sizes differ");
    const TrigInterpolant p(sigma.angle_periodic());
    const std::vector<double> v = phi.node_values();
    std::vector<double> q(v.size());
    for (std::size_t j = 0; j < q.size(); ++j) {
        q[j] = v[j] - GridFunction::node(q.size(), j) + p(v[j]);
    }
    return DegreeOneCurve::from_tangent_lift(GridFunction(std::move(q)), sigma.base_point(),
                                             sigma.length());
}

DegreeOneCurve act_right(const DegreeOneCurve& sigma, const CircleDiffeo& phi, double tol) {
    require_mobius(phi, tol, "act_right");
    return act_right_unchecked(sigma, phi);
}

DegreeOneCurve act_right(const DegreeOneCurve& sigma, const MobiusElement& m) {
    return act_right_unchecked(sigma, mobius_diffeo(m, sigma.size()));
}

DegreeOneCurve act_left_unchecked(const CircleDiffeo& phi, const DegreeOneCurve& sigma) {
    require_convex(sigma, "act_left");
    return from_diffeo(compose(phi, induced_diffeo(sigma)), sigma.base_point(), sigma.length());
}

DegreeOneCurve act_left(const CircleDiffeo& phi, const DegreeOneCurve& sigma, double tol) {
    require_mobius(phi, tol, "act_left");
    return act_left_unchecked(phi, sigma);
}

DegreeOneCurve act_left(const MobiusElement& m, const DegreeOneCurve& sigma) {
    return act_left_unchecked(mobius_diffeo(m, sigma.size()), sigma);
}

DensityHalf act_density(const DensityHalf& f, const CircleDiffeo& phi) {
    if (phi.size() != f.values.size()) throw InvalidInput("act_density: grid sizes differ");
    const TrigInterpolant fi(f.values);
    const std::vector<double> v = phi.node_values();
    std::vector<double> out(v.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = std::exp(-0.5 * phi.log_slope()[j]) * fi(v[j]);
    }
    return {GridFunction(std::move(out))};
}

}  // namespace ovalkit
