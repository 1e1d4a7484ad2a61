// Serial reference vs OpenMP sweep kernels over the default template.

#include <benchmark/benchmark.h>

#include "odris/linkrate.hpp"

using namespace odris;

namespace {

const Scene& template_scene() {
    static const Scene scene = default_sweep_scene();
    return scene;
}

void bench_sweep_k(benchmark::State& state, Exec exec, bool coupled) {
    KSweepConfig config;
    config.k_min = 2;
    config.k_max = static_cast<int>(state.range(0));
    config.coupled = coupled;
    config.exec = exec;
    for (auto _ : state) {
        SweepResult r = sweep_k(template_scene(), config);
        benchmark::DoNotOptimize(r.points.data());
    }
}

void bench_sweep_n(benchmark::State& state, Exec exec) {
    NSweepConfig config;
    config.exec = exec;
    for (int n = 1; n <= state.range(0); n *= 2) config.n_values.push_back(n);
    for (auto _ : state) {
        SweepResult r = sweep_n(template_scene(), config);
        benchmark::DoNotOptimize(r.points.data());
    }
}

void sweep_k_serial(benchmark::State& s) { bench_sweep_k(s, Exec::Serial, false); }
void sweep_k_parallel(benchmark::State& s) { bench_sweep_k(s, Exec::Parallel, false); }
void sweep_k_coupled_serial(benchmark::State& s) { bench_sweep_k(s, Exec::Serial, true); }
void sweep_k_coupled_parallel(benchmark::State& s) { bench_sweep_k(s, Exec::Parallel, true); }
void sweep_n_serial(benchmark::State& s) { bench_sweep_n(s, Exec::Serial); }
void sweep_n_parallel(benchmark::State& s) { bench_sweep_n(s, Exec::Parallel); }

}  // namespace

BENCHMARK(sweep_k_serial)->Arg(6)->Arg(8);
BENCHMARK(sweep_k_parallel)->Arg(6)->Arg(8);
BENCHMARK(sweep_k_coupled_serial)->Arg(8);
BENCHMARK(sweep_k_coupled_parallel)->Arg(8);
BENCHMARK(sweep_n_serial)->Arg(256)->Arg(1024);
BENCHMARK(sweep_n_parallel)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
