// Microbenchmarks for the hot paths: eigendecomposition, measurement
// construction, the acceptance maximization, and outcome simulation.

#include <benchmark/benchmark.h>

#include "psdisc/acceptance.hpp"
#include "psdisc/construct.hpp"
#include "psdisc/metrics.hpp"
#include "psdisc/simulate.hpp"
#include "psdisc/states.hpp"

namespace {

using namespace psdisc;

ProblemInstance instance_for_dim(int dim, uint64_t seed) {
    return make_instance(random_density(dim, dim, seed, {}),
                         random_density(dim, dim, seed + 1, {}), 0.5, {});
}

void BM_Eig(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const Matrix m = random_density(dim, dim, 7, {}).mat();
    for (auto _ : state) benchmark::DoNotOptimize(eig(m));
}
BENCHMARK(BM_Eig)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_MinError(benchmark::State& state) {
    const ProblemInstance inst = instance_for_dim(static_cast<int>(state.range(0)), 11);
    for (auto _ : state) benchmark::DoNotOptimize(min_postselected_error(inst));
}
BENCHMARK(BM_MinError)->Arg(2)->Arg(4)->Arg(8);

void BM_Construct(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const ProblemInstance inst = instance_for_dim(dim, 13);
    const ExtremalSubspaces subs = extremal_subspaces(inst);
    const CaseLabel label = classify(inst);
    ConstructionParams params;
    if (label.equal_case == EqualCase::C2) {
        EqualC2Params p;
        p.psi_min = (1.0 / subs.p_min.rank) * subs.p_min.mat;
        p.c = max_c(inst, p);
        params = p;
    } else {
        EqualC1Params p;
        p.psi_max = (1.0 / subs.p_max.rank) * subs.p_max.mat;
        p.c = max_c(inst, p);
        params = p;
    }
    for (auto _ : state) benchmark::DoNotOptimize(construct_equal(inst, params));
}
BENCHMARK(BM_Construct)->Arg(2)->Arg(4)->Arg(8);

void BM_MaxAcceptance(benchmark::State& state) {
    const ProblemInstance inst =
        instance_for_dim(static_cast<int>(state.range(0)), 17);
    for (auto _ : state) benchmark::DoNotOptimize(max_acceptance_equal(inst));
}
BENCHMARK(BM_MaxAcceptance)->Arg(2)->Arg(4);

void BM_Upsilon(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const ProblemInstance inst = instance_for_dim(dim, 19);
    const ExtremalSubspaces subs = extremal_subspaces(inst);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            upsilon(inst.sigma.mat(), subs.t_max, subs.t_min, 0.5, {}, inst.tol));
}
BENCHMARK(BM_Upsilon)->Arg(2)->Arg(4);

void BM_Simulate(benchmark::State& state) {
    const ProblemInstance inst = instance_for_dim(3, 23);
    const Matrix third = 0.25 * Matrix::identity(3);
    const Measurement m = validate_measurement(third, third, inst.tol);
    const long long n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(simulate(inst, m, n, 42));
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Simulate)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
