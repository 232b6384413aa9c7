#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "ovalkit/diffeo.hpp"
#include "ovalkit/error.hpp"
#include "ovalkit/sampling.hpp"

using namespace ovalkit;

namespace {

double sup_against(const CircleDiffeo& phi, double (*ref)(double, double), double p) {
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double t = kTwoPi * (i + 0.37) / 64.0;
        worst = std::max(worst, circle_distance(phi(t), ref(p, t)));
    }
    return worst;
}

CircleDiffeo lambda_diffeo(double lambda, std::size_t n = 256) {
    return make_family(Family::PhiLambda, {lambda, 0.0}, n);
}

}  // namespace

TEST(FromLogSlope, IdentityAndGauge) {
    const auto id = CircleDiffeo::from_log_slope(GridFunction::constant(64, 0.0), 0.0);
    EXPECT_NEAR(id(1.3), 1.3, 1e-14);
    const auto five = CircleDiffeo::from_log_slope(GridFunction::constant(64, 5.0), 0.0);
    EXPECT_LT(five.log_slope().max_abs(), 1e-14);
    EXPECT_NEAR(CircleDiffeo::rotation(0.7, 64).offset(), 0.7, 0.0);
    EXPECT_NEAR(CircleDiffeo::rotation(-0.5, 64).offset(), kTwoPi - 0.5, 1e-15);
}

TEST(FromLogSlope, LambdaTwoHalfTurn) {
    const auto u = GridFunction::sample(256, [](double t) { return -std::log(1.25 + 0.75 * std::cos(t)); });
    const auto phi = CircleDiffeo::from_log_slope(u, 0.0);
    EXPECT_NEAR(phi(kPi), kPi, 1e-10);
    EXPECT_NEAR(integrate(phi.slope()), kTwoPi, 1e-12);
}

TEST(Evaluate, RotationAndLambdaFamily) {
    const auto rot = CircleDiffeo::rotation(0.4, 64);
    EXPECT_NEAR(rot(2.0), 2.4, 1e-14);
    const auto phi2 = lambda_diffeo(2.0);
    EXPECT_NEAR(phi2(kPi / 2), 2.0 * (kPi / 2 - std::atan(2.0)), 1e-10);
    EXPECT_NEAR(phi2(kPi / 2), 0.9272952180016122, 1e-10);
    EXPECT_NEAR(phi2(1.0 + kTwoPi), phi2(1.0) + kTwoPi, 1e-12);
    double prev = phi2(-1.0);
    for (int i = 1; i < 200; ++i) {
        const double cur = phi2(-1.0 + i * 0.05);
        EXPECT_GT(cur, prev);
        prev = cur;
    }
}

TEST(Compose, Identity) {
    Rng rng(1);
    const auto phi = random_diffeo(rng, 128);
    EXPECT_LT(sup_distance(compose(phi, CircleDiffeo::identity(128)), phi), 1e-10);
    EXPECT_LT(sup_distance(compose(CircleDiffeo::identity(128), phi), phi), 1e-10);
}

TEST(Compose, MobiusHomomorphism) {
    Rng rng(2);
    for (int i = 0; i < 10; ++i) {
        const auto l1 = random_mobius(rng), l2 = random_mobius(rng);
        const auto lhs = compose(mobius_diffeo(l1, 512), mobius_diffeo(l2, 512));
        EXPECT_LT(sup_distance(lhs, mobius_diffeo(l1 * l2, 512)), 1e-8);
    }
}

TEST(Compose, LambdaFamilyMultiplies) {
    for (auto [l, m] : {std::pair{2.0, 1.5}, {0.5, 3.0}, {1.3, 0.9}}) {
        const auto c = compose(lambda_diffeo(l), lambda_diffeo(m));
        EXPECT_LT(sup_against(c, closed_form::phi_lambda, l * m), 1e-8);
        // Oracle written independently of the library's closed forms.
        for (double t : {0.5, 2.0, 4.0}) {
            EXPECT_LT(circle_distance(c(t), oracle::phi_lambda(l, oracle::phi_lambda(m, t))), 1e-8);
        }
    }
}

TEST(Invert, IdentityLambdaAndMobius) {
    EXPECT_LT(sup_distance(invert(CircleDiffeo::identity(64)), CircleDiffeo::identity(64)), 1e-12);
    EXPECT_LT(sup_against(invert(lambda_diffeo(2.0)), closed_form::phi_lambda, 0.5), 1e-8);
    Rng rng(3);
    for (int i = 0; i < 5; ++i) {
        const auto l = random_mobius(rng);
        EXPECT_LT(sup_distance(invert(mobius_diffeo(l, 512)), mobius_diffeo(l.inverse(), 512)), 1e-8);
    }
}

TEST(Invert, TwoSidedInverse) {
    Rng rng(4);
    for (int i = 0; i < 5; ++i) {
        const auto phi = random_diffeo(rng, 256);
        const auto inv = invert(phi);
        EXPECT_LT(sup_distance(compose(inv, phi), CircleDiffeo::identity(256)), 1e-8);
        EXPECT_LT(sup_distance(compose(phi, inv), CircleDiffeo::identity(256)), 1e-8);
    }
}

TEST(GroupLaws, AssociativityAndConstraint) {
    Rng rng(5);
    for (int i = 0; i < 5; ++i) {
        const auto a = random_diffeo(rng, 256), b = random_diffeo(rng, 256), c = random_diffeo(rng, 256);
        const auto lhs = compose(compose(a, b), c);
        const auto rhs = compose(a, compose(b, c));
        EXPECT_LT(sup_distance(lhs, rhs), 1e-8);
        for (const auto& d : {lhs, rhs, invert(a)}) {
            EXPECT_NEAR(integrate(d.slope()), kTwoPi, 1e-10);
        }
    }
}

TEST(Schwarzian, IdentityAndLambdaClosedForm) {
    EXPECT_LT(schwarzian(CircleDiffeo::identity(64)).value.max_abs(), 1e-14);
    const oracle::LambdaSlope ls(2.0);
    const auto s = schwarzian(lambda_diffeo(2.0));
    EXPECT_TRUE(s.resolved);
    const auto ref = GridFunction::sample(256, [&](double t) { return ls.schwarzian(t); });
    EXPECT_LT(max_abs_difference(s.value, ref), 1e-8);
}

TEST(Schwarzian, UnresolvedTailFlagged) {
    const auto psi = make_family(Family::PsiTau, {1.0, 1.0}, 256);
    EXPECT_FALSE(schwarzian(psi).resolved);
}

TEST(MobiusDefect, VanishesOnMobiusAndNotOnLambda) {
    Rng rng(6);
    for (int i = 0; i < 20; ++i) {
        EXPECT_LT(mobius_defect(mobius_diffeo(random_mobius(rng), 512)).max_abs(), 1e-8);
    }
    EXPECT_NEAR(mobius_defect(lambda_diffeo(2.0)).max_abs(), 4.5, 0.1);
}

TEST(MobiusDiffeo, DiagonalSlopeClosedForm) {
    const auto m = MobiusElement::diagonal(std::sqrt(2.0));
    const auto phi = mobius_diffeo(m, 256);
    const auto ref = GridFunction::sample(256, [](double t) {
        return 1.0 / (2.0 * std::cos(t) * std::cos(t) + 0.5 * std::sin(t) * std::sin(t));
    });
    EXPECT_LT(max_abs_difference(phi.slope(), ref), 1e-12);
    EXPECT_NEAR(integrate(ref), kTwoPi, 1e-12);
    // Lift of x ↦ Lx/|Lx|.
    for (double t : {0.4, 2.2, 5.0}) {
        const double ang = std::atan2(std::sin(t) / std::sqrt(2.0), std::sqrt(2.0) * std::cos(t));
        EXPECT_LT(circle_distance(phi(t), ang), 1e-10);
    }
    EXPECT_LT(sup_distance(mobius_diffeo(MobiusElement(), 64), CircleDiffeo::identity(64)), 1e-14);
}

TEST(MobiusElement, NormalizesAndRejects) {
    const auto m = MobiusElement::normalized(2.0, 1.0, 0.0, 2.0);
    EXPECT_NEAR(m.determinant(), 1.0, 1e-14);
    EXPECT_THROW(MobiusElement::normalized(1.0, 2.0, 2.0, 1.0), InvalidInput);
    EXPECT_THROW(MobiusElement::normalized(0.0, 0.0, 0.0, 0.0), InvalidInput);
}

TEST(FracLinear, BasicsAndPole) {
    EXPECT_DOUBLE_EQ(frac_linear(MobiusElement(), 0.7), 0.7);
    EXPECT_DOUBLE_EQ(frac_linear(MobiusElement::normalized(1, 1, 0, 1), 0.0), 1.0);
    EXPECT_THROW(frac_linear(MobiusElement::normalized(1, 0, 1, 1), -1.0), PoleError);
    // The angle form is total there: τ = -1 is ϑ = 3π/4.
    EXPECT_NO_THROW(frac_linear_angle(MobiusElement::normalized(1, 0, 1, 1), 0.75 * kPi));
}

TEST(FracLinear, CompositionIsMatrixProduct) {
    Rng rng(8);
    std::uniform_real_distribution<double> tau(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const auto m1 = random_mobius(rng, 10.0), m2 = random_mobius(rng, 10.0);
        const double t = tau(rng);
        // Through the total angle form, compared as angles on ℝP¹.
        const double th = 0.5 * kPi - std::atan(t);
        const double lhs = frac_linear_angle(m1, frac_linear_angle(m2, th));
        const double rhs = frac_linear_angle(m1 * m2, th);
        EXPECT_LT(std::abs(std::remainder(lhs - rhs, kPi)), 1e-12);
        // Affine form away from poles.
        try {
            const double a = frac_linear(m1, frac_linear(m2, t));
            const double b = frac_linear(m1 * m2, t);
            EXPECT_NEAR(a, b, 1e-9 * (1.0 + std::abs(b)));
        } catch (const PoleError&) {
        }
    }
}

TEST(Families, ClosedFormValues) {
    EXPECT_LT(sup_distance(lambda_diffeo(1.0, 64), CircleDiffeo::identity(64)), 1e-14);
    EXPECT_LT(sup_distance(make_family(Family::PsiTau, {1.0, 0.0}, 64), CircleDiffeo::identity(64)),
              1e-14);
    EXPECT_NEAR(closed_form::psi_tau(1.0, kPi), 0.75 * kPi, 1e-15);
    EXPECT_NEAR(closed_form::psi_tau(1.0, 0.3), 0.3, 0.0);
    EXPECT_NEAR(closed_form::psi_tau(1.0, 1.5 * kPi), 1.5 * kPi, 1e-14);
    // Grid version: the kinks at ±π/2 limit the normalization to O(h²).
    const auto psi = make_family(Family::PsiTau, {1.0, 1.0}, 1024);
    EXPECT_NEAR(psi(kPi), 0.75 * kPi, 1e-5);
    EXPECT_THROW(make_family(Family::PhiLambda, {0.0, 0.0}, 64), InvalidInput);
    EXPECT_THROW(make_family(Family::PsiTauLambda, {-1.0, 1.0}, 64), InvalidInput);
}

TEST(Families, ConjugatedFamilyMatchesComposition) {
    const double lam = 1.2, tau = 0.8;
    for (double t : {0.2, 1.4, 2.5, 3.9, 5.5}) {
        const double direct =
            oracle::phi_lambda(1.0 / lam, std::fmod(closed_form::psi_tau(tau, oracle::phi_lambda(lam, t)), kTwoPi));
        EXPECT_LT(circle_distance(closed_form::psi_tau_lambda(tau, lam, t), direct), 1e-12);
        const double h = 1e-6;
        const double fd = (closed_form::psi_tau_lambda(tau, lam, t + h) -
                           closed_form::psi_tau_lambda(tau, lam, t - h)) / (2 * h);
        EXPECT_NEAR(closed_form::psi_tau_lambda_slope(tau, lam, t), fd, 1e-6);
    }
}

TEST(Cocycle, TrivialAndMobiusAndRandom) {
    EXPECT_LT(cocycle_defect(CircleDiffeo::identity(64), CircleDiffeo::identity(64)), 1e-14);
    Rng rng(9);
    const auto l1 = mobius_diffeo(random_mobius(rng), 512), l2 = mobius_diffeo(random_mobius(rng), 512);
    EXPECT_LT(cocycle_defect(l1, l2), 1e-8);
    for (int i = 0; i < 10; ++i) {
        EXPECT_LT(cocycle_defect(random_diffeo(rng, 512), random_diffeo(rng, 512)), 1e-6);
    }
}

// On ℝP¹ with affine coordinate τ = -tan θ (tangent-line coordinate), an
// antipodally symmetric φ induces F(τ) = -tan φ(-arctan τ). Its classical
// Schwarzian, pulled back, must equal S(φ) + 2φ'² - 2. F's derivatives are
// taken by the chain rule through tan/arctan, independently of mobius_defect.
TEST(TangentLineCorrespondence, SchwarzianPullback) {
    Rng rng(10);
    for (int trial = 0; trial < 5; ++trial) {
        const GridFunction u = random_trig_polynomial(rng, 512, {8, 0.3, true});
        const auto phi = CircleDiffeo::from_log_slope(u, 0.0);
        ASSERT_LT(std::abs(phi(1.0 + kPi) - phi(1.0) - kPi), 1e-12);
        const GridFunction un = phi.log_slope();
        const GridFunction du = derivative(un), ddu = derivative(un, 2);
        const GridFunction defect = mobius_defect(phi);
        const auto vals = phi.node_values();
        double worst = 0.0;
        int checked = 0;
        for (std::size_t j = 0; j < 512; ++j) {
            const double th = un.node(j);
            if (std::abs(std::cos(th)) < 0.3 || std::abs(std::cos(vals[j])) < 0.3) continue;
            const double tau = -std::tan(th);
            const double p1 = std::exp(un[j]), p2 = p1 * du[j], p3 = p1 * (ddu[j] + du[j] * du[j]);
            const double q = 1.0 + tau * tau;
            const double t1 = -1.0 / q, t2 = 2.0 * tau / (q * q), t3 = (2.0 - 6.0 * tau * tau) / (q * q * q);
            const double h1 = p1 * t1, h2 = p2 * t1 * t1 + p1 * t2,
                         h3 = p3 * t1 * t1 * t1 + 3.0 * p2 * t1 * t2 + p1 * t3;
            const double tt = std::tan(vals[j]), sec2 = 1.0 + tt * tt;
            const double f1 = -sec2 * h1;
            const double f2 = -(2.0 * tt * sec2 * h1 * h1 + sec2 * h2);
            const double f3 = -sec2 * ((2.0 + 6.0 * tt * tt) * h1 * h1 * h1 + 6.0 * tt * h1 * h2 + h3);
            const double sf = f3 / f1 - 1.5 * (f2 / f1) * (f2 / f1);
            const double c = std::cos(th);
            worst = std::max(worst, std::abs(sf / (c * c * c * c) - defect[j]));
            ++checked;
        }
        EXPECT_GT(checked, 100);
        EXPECT_LT(worst, 1e-6);
    }
}
