#include <benchmark/benchmark.h>

#include "fracperim/alpha.hpp"
#include "fracperim/canonical.hpp"
#include "fracperim/kernel_table.hpp"
#include "fracperim/minimizer.hpp"
#include "fracperim/singular_integrals.hpp"

using namespace fracperim;

namespace {

QuadratureConfig numeric() {
    QuadratureConfig c;
    c.closed_forms = false;
    return c;
}

const SetSpec& quadrant_exterior() {
    static const SetSpec E = canonical_set("quadrant").minus(SetSpec::ball(Vec{0, 0}, 1));
    return E;
}

void KernelTable2d(benchmark::State& state) {
    const int extent = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(KernelTable(2, 0.3, 1.0 / extent, extent));
}
BENCHMARK(KernelTable2d)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BuildGrid(benchmark::State& state) {
    GridOptions go;
    go.resolution = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_grid_problem(Domain::ball(Vec{0, 0}, 1), quadrant_exterior(), 0.3, go));
}
BENCHMARK(BuildGrid)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void PrincipalValueDisc(benchmark::State& state) {
    const SetSpec B = SetSpec::ball(Vec{0, 0}, 1);
    for (auto _ : state) benchmark::DoNotOptimize(pv_curvature_integral(B, Vec{1, 0}, 0.5));
}
BENCHMARK(PrincipalValueDisc)->Unit(benchmark::kMillisecond);

void AlphaTanh(benchmark::State& state) {
    const SetSpec E = canonical_set("tanh_supergraph");
    for (auto _ : state) benchmark::DoNotOptimize(alpha_s(E, Vec{0, 0}, 1.0, 0.1, numeric()));
}
BENCHMARK(AlphaTanh)->Unit(benchmark::kMillisecond);

void Anneal(benchmark::State& state) {
    GridOptions go;
    go.resolution = static_cast<int>(state.range(0));
    const GridProblem p = build_grid_problem(Domain::ball(Vec{0, 0}, 1), quadrant_exterior(), 0.3, go);
    SolverConfig cfg;
    cfg.solver = SolverKind::anneal;
    cfg.restarts = 1;
    for (auto _ : state) benchmark::DoNotOptimize(minimize(p, cfg));
}
BENCHMARK(Anneal)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void FlipDelta(benchmark::State& state) {
    GridOptions go;
    go.resolution = 32;
    const GridProblem p = build_grid_problem(Domain::ball(Vec{0, 0}, 1), quadrant_exterior(), 0.3, go);
    FlipEvaluator ev(p, State(p.size(), 0));
    std::size_t i = 0;
    for (auto _ : state) {
        ev.flip(i);
        i = (i + 97) % p.size();
    }
}
BENCHMARK(FlipDelta);

}  // namespace
BENCHMARK_MAIN();
