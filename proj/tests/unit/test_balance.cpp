#include <gtest/gtest.h>

#include <cmath>

#include "ovalkit/curve.hpp"
#include "ovalkit/diffeo.hpp"
#include "ovalkit/error.hpp"
#include "ovalkit/functionals.hpp"
#include "ovalkit/sampling.hpp"

using namespace ovalkit;

namespace {

void expect_antipodal_pairs(const BalanceReport& r) {
    for (const auto& p : r.points) {
        bool found = false;
        for (const auto& q : r.points) {
            found = found || (circle_distance(q.theta, p.theta + kPi) < 1e-9 && q.stable == p.stable);
        }
        EXPECT_TRUE(found) << p.theta;
    }
}

}  // namespace

TEST(BalancePoints, RotationIsSaturated) {
    const auto r = balance_points(CircleDiffeo::rotation(0.3, 128));
    EXPECT_TRUE(r.saturated);
    EXPECT_FALSE(r.n_B.has_value());
}

TEST(BalancePoints, LambdaFamilyHasTwoStable) {
    for (double lambda : {0.5, 2.0, 3.0}) {
        const auto r = balance_points(make_family(Family::PhiLambda, {lambda, 0.0}, 256));
        ASSERT_TRUE(r.n_B.has_value());
        EXPECT_EQ(*r.n_B, 2u);
        EXPECT_EQ(r.n_SB, 2u);
        EXPECT_LT(circle_distance(r.points[0].theta, 0.0), 1e-9);
        EXPECT_LT(circle_distance(r.points[1].theta, kPi), 1e-9);
        expect_antipodal_pairs(r);
    }
}

TEST(BalancePoints, BoundaryFamilyHasOnlyUnstable) {
    for (double tau : {-1.0, 0.5, 1.0, 2.0}) {
        const auto r = balance_points(make_family(Family::PsiTau, {1.0, tau}, 256));
        ASSERT_TRUE(r.n_B.has_value());
        EXPECT_EQ(*r.n_B, 2u);
        EXPECT_EQ(r.n_SB, 0u);
        EXPECT_LT(circle_distance(r.points[0].theta, kPi / 2), 1e-2);
    }
}

TEST(BalancePoints, ConjugatedFamilySaturatesOnArcs) {
    for (double lambda : {1.05, 1.2}) {
        for (std::size_t n : {512u, 1024u}) {
            const auto r = balance_points(make_family(Family::PsiTauLambda, {lambda, 1.0}, n),
                                          {1e-6, std::nullopt, 3});
            EXPECT_TRUE(r.saturated) << lambda << " " << n;
            EXPECT_EQ(r.arcs.size(), 2u);
            // Arcs sit inside the exact identity-overlap arc around π/2.
            const double half = 2.0 * std::atan(lambda) - kPi / 2;
            EXPECT_GE(r.arcs[0].begin, kPi / 2 - half - 1e-9);
            EXPECT_LE(r.arcs[0].end, kPi / 2 + half + 1e-9);
        }
    }
}

TEST(BalancePoints, ClosedCurvesHaveAtLeastFourAndEvenCount) {
    Rng rng(21);
    for (int i = 0; i < 20; ++i) {
        const auto sigma = random_closed_convex_curve(rng, 256);
        const auto r = balance_points(induced_diffeo(sigma));
        ASSERT_TRUE(r.n_B.has_value());
        EXPECT_GE(*r.n_B, 4u);
        EXPECT_EQ(*r.n_B % 2, 0u);
        EXPECT_LE(r.n_SB, *r.n_B);
        expect_antipodal_pairs(r);
    }
}

TEST(BalancePoints, RandomDiffeosHaveEvenCountAtLeastTwo) {
    Rng rng(22);
    for (int i = 0; i < 20; ++i) {
        const auto r = balance_points(random_diffeo(rng, 256));
        ASSERT_TRUE(r.n_B.has_value());
        EXPECT_GE(*r.n_B, 2u);
        EXPECT_EQ(*r.n_B % 2, 0u);
    }
}

TEST(BalancePoints, StableCountSurvivesSmallPerturbation) {
    Rng rng(23);
    int tested = 0;
    for (int i = 0; i < 60 && tested < 5; ++i) {
        const auto phi = induced_diffeo(random_closed_convex_curve(rng, 256));
        const auto r = balance_points(phi);
        if (!r.n_B || *r.n_B != 6 || r.n_SB != 6) continue;
        ++tested;
        for (int k = 0; k < 5; ++k) {
            GridFunction noise = random_trig_polynomial(rng, 256, {6, 1.0, false});
            noise = noise * (1e-3 / noise.max_abs());
            const auto q = balance_points(CircleDiffeo::from_log_slope(phi.log_slope() + noise,
                                                                       phi.offset()));
            ASSERT_TRUE(q.n_B.has_value());
            EXPECT_EQ(*q.n_B, 6u);
            EXPECT_EQ(q.n_SB, 6u);
        }
    }
    EXPECT_GT(tested, 0);
}

TEST(Symmetrize, SymmetricInputIsFixed) {
    Rng rng(24);
    const auto u = random_trig_polynomial(rng, 256, {8, 0.3, true});
    const auto phi = CircleDiffeo::from_log_slope(u, 0.4);
    const auto s = symmetrize(phi, 1.0);
    EXPECT_LT(sup_distance(s.diffeo, phi), 1e-9);
}

TEST(Symmetrize, BoundaryFamilyDoublesIdentityHalf) {
    const auto psi = make_family(Family::PsiTau, {1.0, 1.0}, 1024);
    // Both halves are Möbius arcs with energy -π; the tie goes to the identity side.
    const auto s = symmetrize(psi, kPi / 2, 1e-4);
    EXPECT_LT(sup_distance(s.diffeo, CircleDiffeo::rotation(s.diffeo.offset(), 1024)), 1e-4);
    EXPECT_NEAR(energy_G_star_of(s.diffeo), 0.0, 1e-10);
    // The half-integral estimate carries Gibbs leakage from the kinks at ±π/2.
    EXPECT_NEAR(s.energy + kTwoPi, 0.0, 5e-3);
}

TEST(Symmetrize, DoesNotIncreaseEnergy) {
    Rng rng(25);
    for (int i = 0; i < 10; ++i) {
        const auto phi = random_diffeo(rng, 256);
        const auto r = balance_points(phi);
        ASSERT_FALSE(r.points.empty());
        const auto s = symmetrize(phi, r.points[0].theta);
        EXPECT_LE(s.energy + kTwoPi, energy_G_star_of(phi) + 1e-10);
        // Output commutes with the antipodal map.
        EXPECT_LT(std::abs(balance_defect(s.diffeo, 0.7)), 1e-10);
        EXPECT_NEAR(integrate(s.diffeo.slope()), kTwoPi, 1e-10);
    }
}

TEST(Symmetrize, RejectsNonBalancePoint) {
    const auto phi = make_family(Family::PhiLambda, {2.0, 0.0}, 128);
    EXPECT_THROW(symmetrize(phi, kPi / 2), PreconditionError);
}
