#include <benchmark/benchmark.h>

#include "wignerkin/collision.hpp"
#include "wignerkin/parallel.hpp"
#include "wignerkin/propagator.hpp"
#include "wignerkin/rng.hpp"
#include "wignerkin/solver.hpp"

using namespace wignerkin;

namespace {

KineticState random_state(const PhaseGrid& g, std::uint64_t seed) {
    Rng rng(seed);
    KineticState f = KineticState::zeros(g);
    for (double& x : f.values) x = rng.uniform();
    return f;
}

void bm_wigner_roundtrip(benchmark::State& state) {
    PhaseGrid g = make_grid(2, static_cast<int>(state.range(0)), M_PI);
    KineticState f = random_state(g, 1);
    for (auto _ : state) {
        DensityMatrix gm = wigner_inverse(f);
        KineticState back = wigner_forward(gm);
        benchmark::DoNotOptimize(back.values.data());
    }
}
BENCHMARK(bm_wigner_roundtrip)->Arg(9)->Arg(15)->Arg(21);

void bm_free_flow(benchmark::State& state) {
    PhaseGrid g = make_grid(2, static_cast<int>(state.range(0)), M_PI);
    DensityMatrix gm = wigner_inverse(random_state(g, 2));
    for (auto _ : state) {
        DensityMatrix out = free_flow_dm(gm, 0.01);
        benchmark::DoNotOptimize(out.values.data());
    }
}
BENCHMARK(bm_free_flow)->Arg(9)->Arg(21);

void bm_collide(benchmark::State& state) {
    PhaseGrid g = make_grid(2, static_cast<int>(state.range(0)), M_PI);
    AngularQuadrature quad = AngularQuadrature::uniform_circle(32);
    DensityMatrix gm = wigner_inverse(random_state(g, 3));
    for (auto _ : state) {
        DensityMatrix z = collide(gm, ConstantKernel{1.0}, quad);
        benchmark::DoNotOptimize(z.values.data());
    }
}
BENCHMARK(bm_collide)->Arg(9)->Arg(15)->Unit(benchmark::kMillisecond);

void bm_spectral_q(benchmark::State& state) {
    PhaseGrid g = make_grid(2, static_cast<int>(state.range(0)), M_PI);
    AngularQuadrature quad = AngularQuadrature::uniform_circle(32);
    KineticState f = random_state(g, 4);
    for (auto _ : state) {
        KineticState q = q_spectral(f, ConstantKernel{1.0}, quad);
        benchmark::DoNotOptimize(q.values.data());
    }
}
BENCHMARK(bm_spectral_q)->Arg(9)->Arg(15)->Unit(benchmark::kMillisecond);

void bm_solver_step(benchmark::State& state) {
    PhaseGrid g = make_grid(2, 9, M_PI);
    AngularQuadrature quad = AngularQuadrature::uniform_circle(32);
    KineticState f = random_state(g, 5);
    for (double& x : f.values) x *= 0.1;
    DensityMatrix g0 = wigner_inverse(f);
    SolverConfig cfg;
    cfg.T = 0.005;
    cfg.dt = 0.005;
    cfg.record_snapshots = false;
    for (auto _ : state) {
        Trajectory t = solve_duhamel(g0, ConstantKernel{1.0}, quad, cfg);
        benchmark::DoNotOptimize(t.steps.back().picard_residual);
    }
}
BENCHMARK(bm_solver_step)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
