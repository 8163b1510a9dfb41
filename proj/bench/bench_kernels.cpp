// Parallel kernels against their serial references.
#include "qumf/annealer.hpp"
#include "qumf/datagen.hpp"
#include "qumf/preference.hpp"
#include "qumf/qubo.hpp"

#include <benchmark/benchmark.h>

using namespace qumf;

namespace {

struct Instance {
    SyntheticData synth;
    std::vector<ModelHypothesis> pool;
};

Instance make_instance(const int n, const int m) {
    Instance inst;
    inst.synth = generate_star(SyntheticSpec{5, n, 0.0025, 1});
    HypothesisPoolSpec spec;
    spec.m = m;
    spec.seed = 1;
    inst.pool = sample_hypotheses(inst.synth.data.points, inst.synth.gt_models, spec);
    return inst;
}

void BM_preference(benchmark::State &state) {
    const auto inst = make_instance(250, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_preference(inst.synth.data.points, inst.pool, default_epsilon));
    }
}

void BM_preference_serial(benchmark::State &state) {
    const auto inst = make_instance(250, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::build_preference(inst.synth.data.points, inst.pool, default_epsilon));
    }
}

void BM_qubo(benchmark::State &state) {
    const auto inst = make_instance(250, static_cast<int>(state.range(0)));
    const auto P = build_preference(inst.synth.data.points, inst.pool, default_epsilon);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_mmf_qubo(P, 1.1));
    }
}

void BM_qubo_serial(benchmark::State &state) {
    const auto inst = make_instance(250, static_cast<int>(state.range(0)));
    const auto P = build_preference(inst.synth.data.points, inst.pool, default_epsilon);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::build_mmf_qubo(P, 1.1));
    }
}

Qubo anneal_problem(const int m) {
    const auto inst = make_instance(30, m);
    return build_mmf_qubo(build_preference(inst.synth.data.points, inst.pool, default_epsilon), 1.1);
}

void BM_anneal(benchmark::State &state) {
    const Qubo q = anneal_problem(static_cast<int>(state.range(0)));
    AnnealConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_sa(q, cfg));
    }
}

void BM_anneal_serial(benchmark::State &state) {
    const Qubo q = anneal_problem(static_cast<int>(state.range(0)));
    AnnealConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::sample_sa(q, cfg));
    }
}

}  // namespace

BENCHMARK(BM_preference)->Arg(200)->Arg(1000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_preference_serial)->Arg(200)->Arg(1000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_qubo)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_qubo_serial)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_anneal)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_anneal_serial)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
