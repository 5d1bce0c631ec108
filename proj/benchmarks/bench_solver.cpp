#include <benchmark/benchmark.h>

#include "conemetric/solver.hpp"

using namespace conemetric;

namespace {

TorusDivisor flat_pair() {
    return {{{"p", 0.5, 0.25, 0.25}, {"q", -0.5, 0.75, 0.75}}};
}

void BM_PoissonSolve(benchmark::State& state) {
    TorusGrid grid(int(state.range(0)), {0.0, 1.0});
    SpectralEngine engine(grid);
    BackgroundMetric bg = build_background(flat_pair(), 0.15, grid);
    ScalarField rhs(grid);
    for (std::size_t i = 0; i < rhs.v.size(); ++i) rhs.v[i] = -bg.rhoK1.v[i];
    for (auto _ : state) {
        ScalarField u = engine.poisson_solve(rhs);
        benchmark::DoNotOptimize(u.v.data());
    }
}
BENCHMARK(BM_PoissonSolve)->Arg(128)->Arg(256)->Arg(512);

void BM_BuildBackground(benchmark::State& state) {
    TorusGrid grid(int(state.range(0)), {0.0, 1.0});
    for (auto _ : state) {
        BackgroundMetric bg = build_background(flat_pair(), 0.15, grid);
        benchmark::DoNotOptimize(bg.rhoK1.v.data());
    }
}
BENCHMARK(BM_BuildBackground)->Arg(128)->Arg(256);

void BM_FlatMetric(benchmark::State& state) {
    TorusGrid grid(int(state.range(0)), {0.0, 1.0});
    TorusDivisor d = flat_pair();
    for (auto _ : state) {
        SolveReport r = flat_metric(d, grid, 0.15);
        benchmark::DoNotOptimize(r.residual_sup);
    }
}
BENCHMARK(BM_FlatMetric)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_PrescribedCurvature(benchmark::State& state) {
    TorusGrid grid(int(state.range(0)), {0.0, 1.0});
    TorusDivisor d{{{"p", -0.5, 0.5, 0.5}}};
    BackgroundMetric bg = build_background(d, 0.15, grid);
    ScalarField K = annulus_bump_curvature(bg, 0, 0.22, 0.48, 0.10, -pi);
    for (auto _ : state) {
        SolveReport r = prescribed_curvature_solve(d, K, grid, 0.15);
        benchmark::DoNotOptimize(r.iterations);
    }
}
BENCHMARK(BM_PrescribedCurvature)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_HolonomyAngles(benchmark::State& state) {
    TorusGrid grid(256, {0.0, 1.0});
    TorusDivisor d = flat_pair();
    BackgroundMetric bg = build_background(d, 0.15, grid);
    SolveReport r = flat_metric(d, grid, 0.15);
    for (auto _ : state) {
        auto angles = holonomy_cone_angles(bg, r.u);
        benchmark::DoNotOptimize(angles.data());
    }
}
BENCHMARK(BM_HolonomyAngles);

} // namespace

BENCHMARK_MAIN();
