#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fracperim/canonical.hpp"
#include "fracperim/curvature.hpp"
#include "fracperim/thresholds.hpp"
#include "oracles.hpp"

using namespace fracperim;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_decomposed(const CurvatureResult& r) {
    EXPECT_NEAR(r.value, r.local_part + r.tail_part, 1e-13 * (1 + std::abs(r.value)));
    EXPECT_GE(r.error_estimate, 0.0);
    EXPECT_DOUBLE_EQ(r.scaled_s0, r.s * r.value);
    EXPECT_DOUBLE_EQ(r.scaled_s1, (1 - r.s) * r.value);
}

}  // namespace

TEST(GraphFormula, FlatAndOddGraphsVanish) {
    for (double s : {0.1, 0.5, 0.9}) {
        const CurvatureResult flat =
            curvature_graph(graphs::zero(1), Vec{0, 0}, canonical_set("halfspace"), 0.5, 1.0, s);
        EXPECT_EQ(flat.value, 0.0);
        expect_decomposed(flat);
        const CurvatureResult cubic = curvature_at(canonical_set("cubic_supergraph"), Vec{0, 0}, s);
        EXPECT_EQ(cubic.method, "graph");
        EXPECT_NEAR(cubic.value, 0.0, 1e-9);
        expect_decomposed(cubic);
    }
}

TEST(GraphFormula, DiscBottomAgainstPrincipalValue) {
    const SetSpec B = SetSpec::ball(Vec{0, 0}, 1);
    const Vec p{0, -1};
    const auto u = graphs::hemisphere(Vec{0.0}, 0.0, 1.0, -1);
    for (double s : {0.25, 0.5, 0.75}) {
        const CurvatureResult g = curvature_graph(u, p, B, 0.5, 0.5, s);
        const CurvatureResult pv = curvature_pv(B, p, s);
        expect_decomposed(g);
        EXPECT_EQ(g.method, "graph");
        EXPECT_EQ(pv.method, "pv");
        EXPECT_NEAR(g.value, pv.value, g.error_estimate + pv.error_estimate + 1e-6 * std::abs(pv.value)) << s;
        EXPECT_NEAR(g.value, oracles::disc_pv(s), 1e-5 * oracles::disc_pv(s)) << s;
    }
}

TEST(GraphFormula, RejectsExponentAboveHolder) {
    const SetSpec E = SetSpec::supergraph(graphs::linear_on_cone(1, 1.0, 0, 0), 1);
    EXPECT_ANY_THROW(curvature_graph(graphs::linear_on_cone(1, 1.0, 0, 0), Vec{0, 0}, E, 0.5, 2.0, 0.5));
}

TEST(Truncated, Examples) {
    for (double rho : {0.01, 0.3, 2.0}) EXPECT_NEAR(curvature_truncated(canonical_set("halfspace"), Vec{0, 0}, 0.4, rho), 0.0, 1e-10);
    for (double s : {0.2, 0.7}) {
        EXPECT_NEAR(curvature_truncated(SetSpec::empty(2), Vec{0.3, 0.1}, s, 1.0), omega(2) / s, 1e-10);
        EXPECT_NEAR(curvature_truncated(SetSpec::empty(3), Vec{0, 0, 0}, s, 1.0), omega(3) / s, 1e-9);
    }
    const SetSpec B = SetSpec::ball(Vec{0, 0}, 1);
    const double oracle = oracles::disc_truncated(0.5, 0.1);
    const double mc = oracles::mc_truncated_2d(B, Vec{1, 0}, 0.5, 0.1, 2000000, 4242);
    const double value = curvature_truncated(B, Vec{1, 0}, 0.5, 0.1);
    EXPECT_NEAR(value, mc, 0.01 * std::abs(mc));
    EXPECT_NEAR(value, oracle, 1e-6 * oracle);
}

TEST(Scan, HalfSpaceVanishesInEveryMode) {
    for (ScanMode mode : {ScanMode::raw, ScanMode::times_s, ScanMode::times_one_minus_s}) {
        const CurvatureScan scan = curvature_scan(canonical_set("halfspace"), Vec{0, 0}, {0.2, 0.1, 0.05}, mode);
        for (const auto& r : scan.rows) EXPECT_EQ(r.value, 0.0);
        if (mode == ScanMode::raw) continue;
        ASSERT_TRUE(scan.extrapolated_limit.has_value());
        EXPECT_NEAR(*scan.extrapolated_limit, 0.0, 1e-12);
    }
}

TEST(Scan, BallPredictedLimits) {
    const SetSpec B = SetSpec::ball(Vec{0, 0}, 1);
    const CurvatureScan small = curvature_scan(B, Vec{1, 0}, {0.05, 0.025, 0.0125}, ScanMode::times_s);
    ASSERT_TRUE(small.predicted_limit.has_value());
    EXPECT_NEAR(*small.predicted_limit, omega(2), 1e-3);
    EXPECT_NEAR(small.rows.back().scaled_s0, omega(2), 0.05 * omega(2));
    const CurvatureScan large = curvature_scan(B, Vec{1, 0}, {0.9, 0.95, 0.975}, ScanMode::times_one_minus_s);
    ASSERT_TRUE(large.predicted_limit.has_value());
    EXPECT_NEAR(*large.predicted_limit, 2.0, 1e-6);
    ASSERT_TRUE(large.extrapolated_limit.has_value());
    EXPECT_NEAR(*large.extrapolated_limit, 2.0, 0.05 * 2.0);
}

TEST(Continuity, Probes) {
    const SetSpec B = SetSpec::ball(Vec{0, 0}, 1);
    const Vec p{0, -1};
    const std::vector<double> etas{0.1, 0.05, 0.025};

    const ContinuityReport zero = continuity_probe(B, p, 0.5, PerturbationKind::point_shift, {0.0});
    EXPECT_EQ(zero.differences.front(), 0.0);

    const ContinuityReport shift = continuity_probe(B, p, 0.5, PerturbationKind::point_shift, etas);
    for (std::size_t k = 0; k < etas.size(); ++k)
        EXPECT_LT(shift.differences[k], 1e-4 * std::abs(shift.base_value) + shift.errors[k]);

    const ContinuityReport sshift = continuity_probe(B, p, 0.5, PerturbationKind::s_shift, etas);
    EXPECT_TRUE(sshift.monotone);
    EXPECT_LT(sshift.differences.back(), sshift.differences.front());

    const ContinuityReport graph = continuity_probe(B, p, 0.5, PerturbationKind::graph, etas);
    EXPECT_TRUE(graph.monotone);
    EXPECT_LT(graph.differences.back(), graph.differences.front());
}

TEST(Invariants, ComplementNegates) {
    const std::vector<std::pair<SetSpec, Vec>> cases{{SetSpec::ball(Vec{0, 0}, 1), Vec{1, 0}},
                                                    {canonical_set("tanh_supergraph"), Vec{0.5, std::tanh(0.5)}},
                                                    {canonical_set("quadrant"), Vec{0, 0}}};
    for (const auto& [E, p] : cases)
        for (double s : {0.2, 0.6}) {
            const double a = curvature_at(E, p, s).value, b = curvature_at(E.complement(), p, s).value;
            EXPECT_NEAR(a + b, 0.0, 1e-7 * (1 + std::abs(a)));
        }
}

TEST(Invariants, NestedTangentBallsCompare) {
    const SetSpec small = SetSpec::ball(Vec{0.5, 0}, 0.5), large = SetSpec::ball(Vec{0, 0}, 1);
    const Vec x0{1, 0};
    for (double s : {0.3, 0.7})
        for (double rho : {0.4, 0.1, 0.02, 0.005})
            EXPECT_GE(curvature_truncated(small, x0, s, rho), curvature_truncated(large, x0, s, rho));
}

TEST(Invariants, RigidMotion) {
    const SetSpec E = canonical_set("tanh_supergraph");
    const Vec p{0.3, std::tanh(0.3)};
    const Mat R = Mat::rotation2(0.7);
    const Vec shift{2, -1};
    const SetSpec moved = E.rotated(R).translated(shift);
    for (double s : {0.25, 0.6}) {
        const CurvatureResult a = curvature_at(E, p, s), b = curvature_at(moved, R * p + shift, s);
        EXPECT_NEAR(a.value, b.value, a.error_estimate + b.error_estimate);
    }
}

TEST(Invariants, ClassicalCurvatureConvention) {
    const auto disc = classical_curvature(SetSpec::ball(Vec{0, 0}, 2), Vec{2, 0});
    ASSERT_TRUE(disc.has_value());
    EXPECT_NEAR(*disc, 0.5, 1e-5);
    const auto sphere = classical_curvature(SetSpec::ball(Vec{0, 0, 0}, 1), Vec{0, 0, -1});
    ASSERT_TRUE(sphere.has_value());
    EXPECT_NEAR(*sphere, 1.0, 1e-5);
    const auto hole = classical_curvature(SetSpec::ball(Vec{0, 0}, 1).complement(), Vec{1, 0});
    ASSERT_TRUE(hole.has_value());
    EXPECT_NEAR(*hole, -1.0, 1e-5);
}
