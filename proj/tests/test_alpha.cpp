#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fracperim/alpha.hpp"
#include "fracperim/canonical.hpp"
#include "fracperim/mu_bar.hpp"
#include "fracperim/thresholds.hpp"

using namespace fracperim;

namespace {

constexpr double kPi = std::numbers::pi;

QuadratureConfig numeric() {
    QuadratureConfig c;
    c.closed_forms = false;
    return c;
}

}  // namespace

TEST(AlphaS, Examples) {
    EXPECT_EQ(alpha_s(SetSpec::empty(2), Vec{0, 0}, 1.0, 0.3), 0.0);
    const SetSpec Q = canonical_set("quadrant");
    EXPECT_NEAR(alpha_s(Q, Vec{0, 0}, 1.0, 0.1), 5 * kPi, 1e-12);
    EXPECT_NEAR(alpha_s(Q, Vec{0, 0}, 1.0, 0.1, numeric()), 5 * kPi, 1e-6 * 5 * kPi);
    for (double s : {0.05, 0.3, 0.8}) {
        const double expected = omega(2) / (2 * s);
        EXPECT_NEAR(alpha_s(canonical_set("halfspace"), Vec{0, 0}, 1.0, s, numeric()), expected, 1e-6 * expected);
    }
    EXPECT_NEAR(alpha_s(canonical_set("halfspace", {{"n", 3}}), Vec{0, 0, 0}, 1.0, 0.2, numeric()), omega(3) / 0.4,
                1e-5 * omega(3) / 0.4);
}

TEST(AlphaS, Bounds) {
    const std::vector<SetSpec> sets{canonical_set("quadrant"), canonical_set("cubic_supergraph"),
                                    canonical_set("tanh_supergraph"), canonical_set("annulus"),
                                    canonical_set("halfspace").complement()};
    for (const auto& E : sets)
        for (double s : {0.02, 0.2, 0.6})
            for (double r : {0.5, 1.0, 3.0}) {
                const double v = s * alpha_s(E, Vec{0.1, -0.2}, r, s, numeric());
                EXPECT_GE(v, 0.0);
                EXPECT_LE(v, omega(2) * std::pow(r, -s) * (1 + 1e-9));
            }
}

TEST(AlphaClosedForm, Families) {
    auto value = [](const SetSpec& E) {
        const auto c = alpha_closed_form(E);
        EXPECT_TRUE(c.has_value());
        return c ? c->value : NAN;
    };
    EXPECT_NEAR(value(canonical_set("quadrant")), kPi / 2, 1e-15);
    EXPECT_NEAR(value(canonical_set("quadrant").complement()), 3 * kPi / 2, 1e-15);
    EXPECT_NEAR(value(canonical_set("cubic_supergraph")), kPi, 1e-15);
    EXPECT_NEAR(value(canonical_set("tanh_supergraph")), kPi, 1e-15);
    EXPECT_NEAR(value(canonical_set("parabola")), 0.0, 1e-15);
    EXPECT_NEAR(value(canonical_set("ball")), 0.0, 1e-15);
    EXPECT_NEAR(value(canonical_set("halfspace", {{"n", 3}})), omega(3) / 2, 1e-15);
    const double k = 1.0, eb = 0.5;
    const double expected = omega(3) / 2 - 2 * eb * k / std::sqrt(1 + k * k);
    EXPECT_NEAR(value(canonical_set("alphasigma", {{"k", k}, {"eps_bar", eb}})), expected, 1e-12);
}

TEST(AlphaLimit, ConeIsExactOnGrid) {
    const AlphaEstimate est = alpha_limit(canonical_set("cone", {{"half_angle", 0.6}}), Vec{0, 0}, 1.0, numeric());
    EXPECT_TRUE(est.converged);
    EXPECT_NEAR(est.extrapolated_limit, 1.2, 1e-5);
    for (std::size_t k = 0; k < est.s_grid.size(); ++k) EXPECT_NEAR(est.scaled_values[k], 1.2, 2e-6);
    EXPECT_LE(est.extrapolated_limit, omega(2) + est.error_bar);
}

TEST(AlphaCalculus, Relations) {
    const QuadratureConfig cfg = numeric();
    const SetSpec Q = canonical_set("quadrant");
    const SetSpec upper = canonical_set("halfspace");
    const SetSpec cone = canonical_set("cone", {{"half_angle", 0.5}});

    const CalculusReport mono = alpha_calculus_check(Q, upper, AlphaRelation::monotone, cfg, 8);
    EXPECT_TRUE(mono.pass) << mono.max_violation;

    const SetSpec lower_left = SetSpec::angle_box_cone(Vec{0, 0}, kPi, 1.5 * kPi);
    const CalculusReport add = alpha_calculus_check(Q, lower_left, AlphaRelation::additive, cfg, 8);
    EXPECT_TRUE(add.pass) << add.max_relative_gap;

    const CalculusReport rigid = alpha_calculus_check(canonical_set("tanh_supergraph"), {}, AlphaRelation::rigid_motion, cfg, 6);
    EXPECT_TRUE(rigid.pass) << rigid.max_relative_gap;

    const CalculusReport scale = alpha_calculus_check(cone, {}, AlphaRelation::scaling, cfg, 8);
    EXPECT_TRUE(scale.pass) << scale.max_relative_gap;
    EXPECT_LT(scale.max_relative_gap, 1e-6);
}

TEST(AlphaCalculus, ScalingIdentityOnCone) {
    const QuadratureConfig cfg = numeric();
    const SetSpec cone = canonical_set("cone", {{"half_angle", 0.5}});
    const double lambda = 3.0, s = 0.25;
    const Vec q{0.4, 0.7};
    const double lhs = alpha_s(cone.scaled(lambda), q, 1.0, s, cfg);
    const double rhs = std::pow(lambda, -s) * alpha_s(cone, q / lambda, 1.0 / lambda, s, cfg);
    EXPECT_NEAR(lhs, rhs, 1e-6 * rhs);
}

TEST(AlphaCalculus, SymmetricDifferenceFarBall) {
    const SetSpec Q = canonical_set("quadrant");
    const SetSpec F = SetSpec::unite({Q, SetSpec::ball(Vec{-6, 4}, 0.8)});
    const CalculusReport r = alpha_calculus_check(Q, F, AlphaRelation::symm_diff, numeric(), 6);
    EXPECT_TRUE(r.pass);
    ASSERT_TRUE(r.limits.has_value());
    EXPECT_NEAR(r.limits->first, r.limits->second, r.limit_tolerance);
}

TEST(AlphaCalculus, StabilizationInCenterAndRadius) {
    const SetSpec E = canonical_set("tanh_supergraph");
    const QuadratureConfig cfg = numeric();
    double previous = INFINITY;
    for (double s : {0.2, 0.1, 0.05, 0.025, 0.0125}) {
        const double gap = s * std::abs(alpha_s(E, Vec{0, 0}, 1.0, s, cfg) - alpha_s(E, Vec{1.5, -0.5}, 2.5, s, cfg));
        EXPECT_LT(gap, previous);
        previous = gap;
    }
    EXPECT_LT(previous, 0.05 * omega(2));
}

TEST(AlphaDuality, ComplementSumsToSphere) {
    for (const auto& E : {canonical_set("quadrant"), canonical_set("cubic_supergraph")}) {
        const DualityReport d = complement_duality_check(E, Vec{0, 0}, 1.0, numeric());
        EXPECT_TRUE(d.pass) << d.alpha_E << " + " << d.alpha_CE;
        EXPECT_NEAR(d.alpha_E + d.alpha_CE, omega(2), 2 * d.error_bar + 1e-6);
    }
}

TEST(MuBar, BoundedAndFarHalfPlane) {
    MuBarOptions opt;
    opt.grid.resolution = 32;
    const Domain disc = Domain::ball(Vec{0, 0}, 1);

    const MuBarReport bounded = mu_bar_check(SetSpec::ball(Vec{3, 0}, 0.5), disc, {}, opt);
    EXPECT_NEAR(bounded.target, 0.0, 1e-4);
    EXPECT_LT(std::abs(bounded.grid_limit), 0.05);

    const MuBarReport far = mu_bar_check(SetSpec::half_space(Vec{0, 1}, 2.0), disc, {}, opt);
    EXPECT_NEAR(far.target, kPi * kPi, far.alpha_error_bar * far.measure + 1e-3);
    EXPECT_TRUE(far.pass) << far.grid_limit;
    ASSERT_TRUE(far.continuum_limit.has_value());
    EXPECT_NEAR(*far.continuum_limit, far.target, 0.1 * far.target);
}

TEST(MuBar, RejectsSetMeetingDomain) {
    EXPECT_ANY_THROW(mu_bar_check(canonical_set("quadrant"), Domain::ball(Vec{0, 0}, 1)));
}
