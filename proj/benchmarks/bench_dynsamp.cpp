#include <benchmark/benchmark.h>

#include "dynsamp/forward_solver.hpp"
#include "dynsamp/initial_data.hpp"
#include "dynsamp/recovery.hpp"
#include "dynsamp/sampling_schedule.hpp"

namespace dynsamp {
namespace {

OperatorSpec heat() { return validate_coefficients({1.0}); }

Real golden_point(mpfr_prec_t prec = 192) {
    return Real::pi(prec) * (sqrt(Real(5L, prec)) - 1) / 2;
}

void BM_scan_sampling_point(benchmark::State& state) {
    const Real x0 = golden_point();
    const long K = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan_sampling_point(x0, K));
    }
    state.SetComplexityN(K);
}
BENCHMARK(BM_scan_sampling_point)->Arg(256)->Arg(1024)->Arg(4096)->Complexity();

void BM_a0_constant(benchmark::State& state) {
    const OperatorSpec spec = heat();
    const Real t1(1.0, 64);
    for (auto _ : state) {
        A0Result a = a0_constant(spec, t1, 1e-12);
        benchmark::DoNotOptimize(a.value);
    }
}
BENCHMARK(BM_a0_constant);

void BM_evaluate_solution(benchmark::State& state) {
    const OperatorSpec spec = heat();
    const long K = state.range(0);
    const InitialDatum f = random_ball_member(2.0, K, 0.9, 7);
    const Real x0 = golden_point();
    const Real t(0.5, 192);
    for (auto _ : state) {
        EvalResult u = evaluate_solution(spec, f, x0, t, 1e-30);
        benchmark::DoNotOptimize(u.value);
    }
    state.SetComplexityN(K);
}
BENCHMARK(BM_evaluate_solution)->Arg(50)->Arg(200)->Arg(800)->Complexity();

void BM_sample_trace(benchmark::State& state) {
    const OperatorSpec spec = heat();
    const long n = state.range(0);
    const InitialDatum f = random_ball_member(2.0, 200, 0.9, 7);
    const SamplingPlan plan =
        make_autonomous_plan(spec, golden_point(), 1000, Real(0.5, 64), 2.8, n);
    const long bits = plan_precision_bits(spec, plan, 2.0, 200, 1e-3, -256.0);
    for (auto _ : state) {
        Trace tr = sample_trace(spec, f, plan, 1e-30, bits);
        benchmark::DoNotOptimize(tr.samples);
    }
}
BENCHMARK(BM_sample_trace)->Arg(4)->Arg(8);

void BM_recover_coefficients(benchmark::State& state) {
    const OperatorSpec spec = heat();
    const long n = state.range(0);
    const InitialDatum f = random_ball_member(2.0, 200, 0.9, 7);
    const SamplingPlan plan =
        make_autonomous_plan(spec, golden_point(), 1000, Real(0.5, 64), 2.8, n);
    const long bits = plan_precision_bits(spec, plan, 2.0, 200, 1e-3, -256.0);
    const Trace tr = sample_trace(spec, f, plan, 1e-30, bits);
    for (auto _ : state) {
        CoefficientRecovery rec = recover_coefficients(tr, spec);
        benchmark::DoNotOptimize(rec.c_bar);
    }
}
BENCHMARK(BM_recover_coefficients)->Arg(4)->Arg(8);

}  // namespace
}  // namespace dynsamp

BENCHMARK_MAIN();
