#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "fracperim/canonical.hpp"
#include "fracperim/error.hpp"
#include "fracperim/kernels.hpp"
#include "fracperim/singular_integrals.hpp"
#include "fracperim/thresholds.hpp"
#include "oracles.hpp"

using namespace fracperim;

namespace {

constexpr double kPi = std::numbers::pi;

double G_by_quadrature(int n, double s, double t) {
    using boost::math::quadrature::gauss_kronrod;
    auto g = [&](double x) { return std::pow(1.0 + x * x, -0.5 * (n + s)); };
    return gauss_kronrod<double, 61>::integrate(g, 0.0, t, 15, 1e-14);
}

}  // namespace

TEST(Kernels, GExamples) {
    EXPECT_DOUBLE_EQ(g_kernel(2, 0.5, 0.0), 1.0);
    EXPECT_NEAR(g_kernel(2, 0.5, 1.0), 0.42044820762685725, 1e-15);  // 2^{-1.25}
    EXPECT_THROW(g_kernel(2, 1.0, 0.3), Error);
    EXPECT_THROW(g_kernel(2, 0.0, 0.3), Error);
}

TEST(Kernels, GEvenAndBounded) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> t(-50, 50), s(0.01, 0.99);
    for (int k = 0; k < 1000; ++k) {
        const double x = t(rng), ss = s(rng);
        for (int n = 1; n <= 3; ++n) {
            const double g = g_kernel(n, ss, x);
            EXPECT_EQ(g, g_kernel(n, ss, -x));
            EXPECT_GT(g, 0.0);
            EXPECT_LE(g, 1.0);
        }
    }
}

TEST(Kernels, GIntegralOddMonotoneBounded) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> t(0, 30), s(0.01, 0.99);
    EXPECT_EQ(G_kernel(2, 0.5, 0.0), 0.0);
    for (int k = 0; k < 500; ++k) {
        const double x = t(rng), y = t(rng), ss = s(rng);
        for (int n = 1; n <= 3; ++n) {
            const double gx = G_kernel(n, ss, x);
            EXPECT_EQ(gx + G_kernel(n, ss, -x), 0.0);
            EXPECT_LE(gx, x);
            EXPECT_LE(gx, G_kernel_limit(n, ss));
            if (x < y) EXPECT_LT(gx, G_kernel(n, ss, y));
        }
    }
}

TEST(Kernels, GIntegralAgainstQuadrature) {
    for (int n = 1; n <= 3; ++n)
        for (double s : {0.05, 0.3, 0.7, 0.95})
            for (double t : {0.01, 0.5, 1.0, 3.0, 40.0}) EXPECT_NEAR(G_kernel(n, s, t), G_by_quadrature(n, s, t), 1e-12);
}

TEST(Kernels, ArctangentLimit) {
    EXPECT_NEAR(G_power(2.0, INFINITY), kPi / 2, 1e-15);
    for (double t : {0.1, 1.0, 7.0}) EXPECT_NEAR(G_power(2.0, t), std::atan(t), 1e-15);
    EXPECT_NEAR(G_kernel_limit(1, 1.0 - 1e-9), kPi / 2, 1e-6);
}

TEST(Kernels, GDifferenceMatchesDirect) {
    for (double a : {-2.0, 0.1, 0.7, 5.0})
        for (double h : {1e-9, 1e-4, 0.2}) {
            const double b = a + h;
            EXPECT_NEAR(G_difference(2, 0.4, b, a), G_by_quadrature(2, 0.4, b) - G_by_quadrature(2, 0.4, a),
                        1e-14 + 1e-11 * h);
        }
}

TEST(PrincipalValue, SymmetricSetsVanishExactly) {
    for (double s : {0.1, 0.5, 0.9}) {
        EXPECT_EQ(pv_curvature_integral(canonical_set("halfspace"), Vec{0, 0}, s).value, 0.0);
        const PVEstimate c = pv_curvature_integral(canonical_set("cubic_supergraph"), Vec{0, 0}, s);
        EXPECT_EQ(c.value, 0.0);
        EXPECT_TRUE(c.converged);
    }
    EXPECT_EQ(pv_curvature_integral(canonical_set("halfspace", {{"n", 3}}), Vec{0, 0, 0}, 0.5).value, 0.0);
}

TEST(PrincipalValue, DiscAgainstChordOracle) {
    const SetSpec B = SetSpec::ball(Vec{0, 0}, 1);
    for (double s : {0.1, 0.25, 0.5, 0.75}) {
        const PVEstimate r = pv_curvature_integral(B, Vec{1, 0}, s);
        EXPECT_TRUE(r.converged);
        EXPECT_NEAR(r.value, oracles::disc_pv(s), 1e-5 * oracles::disc_pv(s)) << "s = " << s;
        EXPECT_GE(r.error_estimate, 0.0);
    }
    // The schedule converges like rho^{1-s}; near s = 1 its error estimate must cover the gap.
    const PVEstimate r = pv_curvature_integral(B, Vec{1, 0}, 0.9);
    EXPECT_LE(std::abs(r.value - oracles::disc_pv(0.9)), r.error_estimate);
}

TEST(PrincipalValue, ChordOracleAgainstMonteCarlo) {
    const SetSpec B = SetSpec::ball(Vec{0, 0}, 1);
    const double s = 0.5, rho = 0.1;
    const double oracle = oracles::disc_truncated(s, rho);
    EXPECT_NEAR(oracles::mc_truncated_2d(B, Vec{1, 0}, s, rho, 2000000, 99), oracle, 0.01 * oracle);
    EXPECT_NEAR(truncated_integral(B, Vec{1, 0}, s, rho, {}).value, oracle, 1e-6 * oracle);
    EXPECT_NEAR(oracles::disc_truncated(s, 1e-9), oracles::disc_pv(s), 1e-3);
}

TEST(PrincipalValue, SphereClosedForm) {
    const SetSpec B = SetSpec::ball(Vec{0, 0, 0}, 1);
    for (double s : {0.25, 0.75}) {
        const double exact = 4 * kPi / s * std::pow(2.0, -s) / (1 - s);
        EXPECT_NEAR(pv_curvature_integral(B, Vec{0, 0, 1}, s).value, exact, 1e-4 * exact);
    }
}

TEST(PrincipalValue, ScheduleIsCauchy) {
    const PVEstimate r = pv_curvature_integral(SetSpec::ball(Vec{0, 0}, 1), Vec{1, 0}, 0.5);
    ASSERT_GE(r.schedule.size(), 4u);
    for (std::size_t k = 1; k < r.rho.size(); ++k) EXPECT_LT(r.rho[k], r.rho[k - 1]);
    const std::size_t m = r.schedule.size();
    EXPECT_LT(std::abs(r.schedule[m - 1] - r.schedule[m - 2]), std::abs(r.schedule[1] - r.schedule[0]));
}

TEST(Tail, Examples) {
    const double s = 0.1;
    EXPECT_NEAR(tail_integral(canonical_set("quadrant"), Vec{0, 0}, 1.0, s, true), 10 * kPi, 1e-12);
    const SetSpec ball = SetSpec::ball(Vec{0.1, 0.2}, 0.5);
    EXPECT_NEAR(tail_integral(ball, Vec{0, 0}, 3.0, 0.3, true), omega(2) * std::pow(3.0, -0.3) / 0.3, 1e-12);
    EXPECT_NEAR(tail_integral(canonical_set("halfspace"), Vec{0, 0}, 2.0, 0.4, true), 0.0, 1e-12);
}

TEST(Tail, ClosedFormMatchesQuadrature) {
    QuadratureConfig numeric;
    numeric.closed_forms = false;
    const SetSpec cone = SetSpec::cap_cone(Vec{0, 0}, Vec{0, 1}, 0.9);
    const SetSpec ball = SetSpec::ball(Vec{0.5, 0}, 0.8);
    for (double s : {0.2, 0.6}) {
        for (const auto& [E, R] : {std::pair{cone, 1.0}, std::pair{ball, 0.5}}) {
            const double closed = tail_integral(E, Vec{0, 0}, R, s, true);
            const IntegralEstimate num = tail_integral_estimate(E, Vec{0, 0}, R, s, true, numeric);
            EXPECT_EQ(num.route, "quadrature");
            EXPECT_NEAR(num.value, closed, 1e-6 * std::abs(closed) + 1e-10);
        }
    }
}
