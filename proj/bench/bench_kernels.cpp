// Compares the serial reference loops against the OpenMP kernels, and times
// a full solve on top of them.  Run with OMP_NUM_THREADS set to taste.

#include <benchmark/benchmark.h>

#include <cstddef>

#include "netclear/gen.hpp"
#include "netclear/kernels.hpp"
#include "netclear/solver.hpp"

namespace {

netclear::FinancialSystem dense_instance(std::size_t n) {
    netclear::GenSpec spec;
    spec.n = n;
    spec.seed = 20240901;
    spec.family = netclear::Family::random_dense;
    spec.cash_fraction = 0.5;
    return netclear::generate(spec);
}

void BM_ClearingStepSerial(benchmark::State& state) {
    const auto sys = dense_instance(static_cast<std::size_t>(state.range(0)));
    netclear::Vec p(sys.size(), 0.25), out(sys.size());
    for (auto _ : state) {
        netclear::reference::clearing_step(sys, p.data(), out.data());
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_ClearingStepParallel(benchmark::State& state) {
    const auto sys = dense_instance(static_cast<std::size_t>(state.range(0)));
    netclear::Vec p(sys.size(), 0.25), out(sys.size());
    for (auto _ : state) {
        netclear::kernels::clearing_step(sys, p.data(), out.data());
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_SolveClearing(benchmark::State& state) {
    const auto sys = dense_instance(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto report = netclear::solve_clearing(sys);
        benchmark::DoNotOptimize(report.p_star.data());
    }
}

}  // namespace

BENCHMARK(BM_ClearingStepSerial)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_ClearingStepParallel)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_SolveClearing)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
