#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "fracperim/canonical.hpp"
#include "fracperim/error.hpp"
#include "fracperim/grid_checks.hpp"
#include "fracperim/kernel_table.hpp"
#include "fracperim/minimizer.hpp"
#include "fracperim/sweep.hpp"

using namespace fracperim;

namespace {

const Domain kBox = Domain::box(Vec{-1, -1}, Vec{1, 1});

GridProblem small_problem(const SetSpec& exterior, double s, int resolution = 4) {
    GridOptions go;
    go.resolution = resolution;
    return build_grid_problem(kBox, exterior, s, go);
}

State trace_of(const GridProblem& p, const SetSpec& E) {
    State st(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) st[i] = E.inside(p.centers[i]) ? 1 : 0;
    return st;
}

// 1D unit cells at offset d >= 1: second difference of u^{1-s} / (-s (1-s)), in extended precision.
double unit_kernel_1d_closed(int d, double s) {
    const long double ls = s;
    auto G = [ls](long double u) { return u <= 0 ? 0.0L : std::pow(u, 1 - ls) / (-ls * (1 - ls)); };
    return static_cast<double>(G(d + 1.0L) - 2 * G(d) + G(d - 1.0L));
}

}  // namespace

TEST(Kernel, OneDimensionalClosedForm) {
    for (double s : {0.05, 0.5, 0.95})
        for (int d : {1, 2, 3, 10, 100}) EXPECT_NEAR(unit_kernel_1d(d, s), unit_kernel_1d_closed(d, s), 1e-12 * unit_kernel_1d_closed(d, s));
}

// Summing the planar interaction over a full column reproduces the line interaction:
// integral over R of (a^2 + y^2)^{-(2+s)/2} dy = B(1/2, (1+s)/2) a^{-1-s}.
TEST(Kernel, ColumnSumOracle) {
    const int M = 4000;
    for (double s : {0.1, 0.5, 0.9, 0.99})
        for (int dx : {1, 2, 4}) {
            double acc = 0.0;
            for (int dy = -M; dy <= M; ++dy) acc += unit_kernel_2d(dx, dy, s);
            acc += 2 * std::pow(M + 0.5, -1 - s) / (1 + s);
            const double expected = boost::math::beta(0.5, 0.5 * (1 + s)) * unit_kernel_1d(dx, s);
            EXPECT_NEAR(acc / expected, 1.0, 1e-9) << "s " << s << " dx " << dx;
        }
}

TEST(Kernel, TableSymmetricPositiveScaled) {
    const double s = 0.3, h = 0.125;
    const KernelTable t(2, s, h, 12);
    for (int dx = -12; dx <= 12; ++dx)
        for (int dy = -12; dy <= 12; ++dy) {
            if (dx == 0 && dy == 0) continue;
            EXPECT_GT(t(dx, dy), 0.0);
            EXPECT_EQ(t(dx, dy), t(-dx, dy));
            EXPECT_NEAR(t(dx, dy), t(dy, dx), 1e-13 * t(dx, dy));
            EXPECT_NEAR(t(dx, dy), std::pow(h, 2 - s) * unit_kernel_2d(dx, dy, s), 1e-12 * t(dx, dy));
        }
    for (int d = 1; d < 12; ++d) EXPECT_GT(t(d, 0), t(d + 1, 0));
}

TEST(Energy, EmptyExteriorAndState) {
    const GridProblem p = small_problem(SetSpec::empty(2), 0.5);
    EXPECT_EQ(discrete_perimeter(p, State(p.size(), 0)), 0.0);
    const MinimizeResult r = minimize(p);
    EXPECT_EQ(r.solver, SolverKind::exhaustive);
    EXPECT_EQ(r.energy, 0.0);
    EXPECT_TRUE(std::all_of(r.state.begin(), r.state.end(), [](auto v) { return v == 0; }));
}

TEST(Energy, TraceFlipsIncrease) {
    const SetSpec lower = SetSpec::half_space(Vec{0, -1}, 0.0);
    for (double s : {0.2, 0.7}) {
        const GridProblem p = small_problem(lower.minus(kBox.as_set()), s, 8);
        const State trace = trace_of(p, lower);
        const double e0 = discrete_perimeter(p, trace);
        FlipEvaluator ev(p, trace);
        for (std::size_t i = 0; i < p.size(); ++i) {
            State flipped = trace;
            flipped[i] ^= 1;
            const double direct = discrete_perimeter(p, flipped) - e0;
            EXPECT_GT(direct, 0.0);
            EXPECT_NEAR(flip_delta(p, trace, i), direct, 1e-12 * e0);
            EXPECT_NEAR(ev.delta(i), direct, 1e-12 * e0);
        }
        EXPECT_TRUE(is_flip_stable(p, trace));
    }
}

TEST(Energy, IncrementalMatchesRecompute) {
    GridOptions go;
    go.resolution = 12;
    const GridProblem p = build_grid_problem(Domain::ball(Vec{0, 0}, 1), canonical_set("quadrant").minus(SetSpec::ball(Vec{0, 0}, 1)), 0.3, go);
    std::mt19937_64 rng(5);
    FlipEvaluator ev(p, State(p.size(), 0));
    for (int k = 0; k < 5000; ++k) {
        ev.flip(rng() % p.size());
        if (k % 500 == 0) {
            const double full = discrete_perimeter(p, ev.state());
            EXPECT_NEAR(ev.energy(), full, 1e-9 * full);
        }
    }
}

TEST(Energy, MirrorSymmetry) {
    const SetSpec E = SetSpec::half_space(Vec{0.6, -0.8}, 0.1).minus(kBox.as_set());
    const Mat mirror = Mat::from_rows({{-1, 0}, {0, 1}});
    const GridProblem p = small_problem(E, 0.4, 6), q = small_problem(E.rotated(mirror), 0.4, 6);
    ASSERT_EQ(p.size(), q.size());
    std::map<std::pair<long, long>, std::size_t> index;
    for (std::size_t j = 0; j < q.size(); ++j) index[{std::lround(q.centers[j][0] * 1e6), std::lround(q.centers[j][1] * 1e6)}] = j;
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        State a(p.size()), b(q.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            a[i] = rng() & 1;
            b[index.at({std::lround(-p.centers[i][0] * 1e6), std::lround(p.centers[i][1] * 1e6)})] = a[i];
        }
        const double ea = discrete_perimeter(p, a), eb = discrete_perimeter(q, b);
        EXPECT_NEAR(ea, eb, 1e-12 * ea);
    }
}

TEST(Energy, CollarDoubling) {
    const SetSpec E = canonical_set("quadrant").minus(SetSpec::ball(Vec{0, 0}, 1));
    GridOptions a, b;
    a.resolution = b.resolution = 16;
    b.collar = 2 * a.collar;
    const Domain disc = Domain::ball(Vec{0, 0}, 1);
    const GridProblem pa = build_grid_problem(disc, E, 0.2, a), pb = build_grid_problem(disc, E, 0.2, b);
    ASSERT_EQ(pa.size(), pb.size());
    for (const State& st : {State(pa.size(), 0), State(pa.size(), 1), trace_of(pa, canonical_set("quadrant"))}) {
        const double ea = discrete_perimeter(pa, st), eb = discrete_perimeter(pb, st);
        EXPECT_LT(std::abs(ea - eb), 1e-4 * eb);
    }
}

TEST(Minimize, HalfPlaneRigidity) {
    const SetSpec lower = SetSpec::half_space(Vec{0, -1}, 0.0);
    for (double s : {0.1, 0.5, 0.9}) {
        const GridProblem p = small_problem(lower.minus(kBox.as_set()), s);
        const MinimizeResult r = minimize(p);
        EXPECT_EQ(r.state, trace_of(p, lower)) << s;
        EXPECT_TRUE(is_flip_stable(p, r.state));
        EXPECT_NEAR(r.energy, discrete_perimeter(p, r.state), 1e-12 * r.energy);
    }
}

TEST(Minimize, ComplementDualityExact) {
    const SetSpec b = kBox.as_set();
    const std::vector<SetSpec> exteriors{SetSpec::half_space(Vec{1, 1}.normalized(), 0.1).minus(b),
                                         canonical_set("quadrant").minus(b), SetSpec::ball(Vec{3, 0}, 0.5)};
    for (const auto& E : exteriors)
        for (double s : {0.1, 0.5, 0.9}) {
            const GridProblem p = small_problem(E, s);
            const GridProblem c = complement_problem(p);
            const MinimizeResult a = minimize(p), d = minimize(c);
            ASSERT_EQ(a.solver, SolverKind::exhaustive);
            for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(a.state[i], 1 - d.state[i]);
            EXPECT_NEAR(a.energy, d.energy, 1e-12 * (1 + a.energy));
        }
}

TEST(Minimize, AnnealFindsExhaustiveOptimum) {
    const SetSpec b = kBox.as_set();
    for (const auto& E : {canonical_set("quadrant").minus(b), SetSpec::half_space(Vec{0, 1}, 0.0).minus(b)}) {
        const GridProblem p = small_problem(E, 0.5);
        const MinimizeResult ex = minimize(p);
        SolverConfig cfg;
        cfg.solver = SolverKind::anneal;
        const MinimizeResult an = minimize(p, cfg);
        ASSERT_EQ(an.restart_energies.size(), 8u);
        int agree = 0;
        for (double e : an.restart_energies) agree += std::abs(e - ex.energy) <= 1e-9 * ex.energy ? 1 : 0;
        EXPECT_GE(agree, 7);
        EXPECT_EQ(an.restarts_agreeing, agree);
        EXPECT_FALSE(an.low_confidence);
        EXPECT_EQ(an.seeds.size(), 8u);
    }
}

TEST(Minimize, SeededRunsRepeat) {
    GridOptions go;
    go.resolution = 10;
    const GridProblem p = build_grid_problem(Domain::ball(Vec{0, 0}, 1), canonical_set("quadrant").minus(SetSpec::ball(Vec{0, 0}, 1)), 0.2, go);
    const MinimizeResult a = minimize(p), b = minimize(p);
    EXPECT_EQ(a.state, b.state);
    EXPECT_EQ(a.trace, b.trace);
    EXPECT_EQ(a.restart_energies, b.restart_energies);
}

TEST(DeltaDense, RasterExamples) {
    GridOptions go;
    go.resolution = 64;
    const Domain disc = Domain::ball(Vec{0, 0}, 1);
    const GridProblem p = build_grid_problem(disc, SetSpec::empty(2), 0.3, go);

    const DenseReport full = is_delta_dense(p, State(p.size(), 1), 0.2);
    EXPECT_TRUE(full.dense);
    EXPECT_GT(full.centers_checked, 0);

    const DenseReport none = is_delta_dense(p, State(p.size(), 0), 0.2);
    EXPECT_FALSE(none.dense);
    ASSERT_TRUE(none.witness.has_value());
    EXPECT_LT(none.witness->norm() + 0.2, 1.0 + 1e-12);

    const SetSpec G = canonical_set("gamma_k_eps", {{"k", 2}, {"eps", 0.05}});
    const State gs = trace_of(p, G);
    EXPECT_TRUE(is_delta_dense(p, gs, 0.5).dense);
    EXPECT_FALSE(is_delta_dense(p, gs, 0.05).dense);
    EXPECT_THROW(is_delta_dense(p, gs, 0.5 * p.h), Error);
}

TEST(DeltaDense, SetExamples) {
    const Domain disc = Domain::ball(Vec{0, 0}, 1);
    const SetSpec G = canonical_set("gamma_k_eps", {{"k", 2}, {"eps", 0.05}});
    EXPECT_TRUE(is_delta_dense(G, disc, 0.5).dense);
    const DenseReport thin = is_delta_dense(G, disc, 0.05);
    EXPECT_FALSE(thin.dense);
    ASSERT_TRUE(thin.witness.has_value());
    EXPECT_TRUE(is_delta_dense(SetSpec::full(2), disc, 0.3).dense);
    EXPECT_FALSE(is_delta_dense(SetSpec::empty(2), disc, 0.3).dense);
}

TEST(DensityEstimate, Examples) {
    GridOptions go;
    go.resolution = 16;
    const Domain disc = Domain::ball(Vec{0, 0}, 1);
    const GridProblem p = build_grid_problem(disc, SetSpec::empty(2), 0.3, go);
    const auto empty = density_estimate_check(p, State(p.size(), 0), 0.0, 0.4, 0.5);
    EXPECT_TRUE(empty.pass);
    EXPECT_EQ(empty.worst_ratio, 1.0);
    EXPECT_DOUBLE_EQ(empty.bound, 0.5);
    const auto full = density_estimate_check(p, State(p.size(), 1), 0.0, 0.4, 0.5);
    EXPECT_FALSE(full.pass);
    EXPECT_EQ(full.worst_ratio, 0.0);
}

TEST(MaximumPrinciple, Examples) {
    GridOptions go;
    go.resolution = 16;
    const Domain disc = Domain::ball(Vec{0, 0}, 1);
    const SetSpec upper = SetSpec::half_space(Vec{0, 1}, 0.0).minus(SetSpec::ball(Vec{0, 0}, 1));
    const GridProblem p = build_grid_problem(disc, upper, 0.3, go);
    SolverConfig cfg;
    cfg.restarts = 4;
    const MinimizeResult r = minimize(p, cfg);
    const Vec nu{0, 1};
    EXPECT_TRUE(maximum_principle_check(p, r.state, nu, 0.0).pass);

    State bad = r.state;
    std::size_t below = 0;
    while (p.centers[below][1] > -0.5) ++below;
    bad[below] = 1;
    const auto rep = maximum_principle_check(p, bad, nu, 0.0);
    EXPECT_FALSE(rep.pass);
    EXPECT_GE(rep.violations, 1);

    const GridProblem pe = build_grid_problem(disc, SetSpec::empty(2), 0.3, go);
    for (const Vec& n : {Vec{1, 0}, Vec{0, -1}, Vec{0.6, 0.8}})
        EXPECT_TRUE(maximum_principle_check(pe, State(pe.size(), 0), n, 0.3).pass);

    try {
        maximum_principle_check(p, r.state, Vec{0, -1}, 0.0);
        ADD_FAILURE() << "hypothesis violation not detected";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::precondition_violated);
    }
}

TEST(Sweep, BoundedExteriorStaysEmpty) {
    SweepOptions opt;
    opt.grid.resolution = 16;
    opt.solver.restarts = 4;
    for (const auto& row : stickiness_sweep(sweep_preset("bounded-E0"), {0.4, 0.1}, opt)) {
        EXPECT_EQ(row.classification, Phase::empty) << row.s;
        EXPECT_EQ(row.occupancy, 0.0);
        EXPECT_TRUE(row.density_pass);
    }
}

TEST(Sweep, PresetsAndNames) {
    EXPECT_EQ(sweep_preset_names().size(), 4u);
    for (const auto& name : sweep_preset_names()) EXPECT_EQ(sweep_preset(name).name, name);
    EXPECT_THROW(sweep_preset("nope"), Error);
}
