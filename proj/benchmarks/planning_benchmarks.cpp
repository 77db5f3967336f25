#include <benchmark/benchmark.h>

#include "jsccplan/channel_sim.hpp"
#include "jsccplan/kkt_solver.hpp"
#include "jsccplan/planners.hpp"
#include "jsccplan/scenario.hpp"
#include "jsccplan/special_functions.hpp"

namespace {

using namespace jsccplan;

experiments::Scenario scenario(int device_count) {
    experiments::ScenarioSpec spec;
    spec.device_count = device_count;
    spec.seed = 1;
    return experiments::generate_scenario(spec);
}

void BM_ExpIntegralE1(benchmark::State& state) {
    double g = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(exp_integral_e1(g));
        g = g < 50.0 ? g * 1.7 : 1e-6;
    }
}
BENCHMARK(BM_ExpIntegralE1);

void BM_MinThreshold(benchmark::State& state) {
    double c = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_threshold(c));
        c = c < 1e3 ? c * 2.3 : 1e-6;
    }
}
BENCHMARK(BM_MinThreshold);

void BM_SolveP4(benchmark::State& state) {
    const experiments::Scenario sc = scenario(4);
    P4Instance inst;
    inst.cfg = sc.config;
    inst.devices = sc.devices;
    inst.crs.assign(sc.devices.size(), sc.config.cr_catalog[1]);
    const auto [lo, hi] = init_bounds(sc.config, sc.devices);
    inst.T = hi;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_p4(inst));
    }
}
BENCHMARK(BM_SolveP4);

void BM_SolveOptimal(benchmark::State& state) {
    const experiments::Scenario sc = scenario(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_optimal(sc.config, sc.devices));
    }
}
BENCHMARK(BM_SolveOptimal)->Arg(2)->Arg(4)->Arg(6);

void BM_SolveHeuristic(benchmark::State& state) {
    const experiments::Scenario sc = scenario(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_heuristic(sc.config, sc.devices));
    }
}
BENCHMARK(BM_SolveHeuristic)->Arg(2)->Arg(4)->Arg(6);

void BM_SimulateDevice(benchmark::State& state) {
    const experiments::Scenario sc = scenario(1);
    sim::SimOptions opts;
    opts.num_slots = 2048;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sim::simulate_device(sc.config, sc.devices[0], 0.125, 0.8, 0.5, opts));
    }
}
BENCHMARK(BM_SimulateDevice);

}  // namespace

BENCHMARK_MAIN();
