#include <benchmark/benchmark.h>

#include "foodex/dynamics.hpp"
#include "foodex/extended.hpp"
#include "foodex/policy.hpp"
#include "foodex/statics.hpp"

namespace {

using namespace foodex;

MarketPrimitives baseline_market() { return {2.56, 1.0, 0.1, 2.0, 0.0}; }
PolicyFunctions baseline_functions() {
  PolicyFunctions f;
  f.prob = {0.4, 1.0};
  f.alpha = {0.05, 0.5};
  f.beta = {0.5};
  return f;
}

void BM_ClosedFormEquilibrium(benchmark::State& state) {
  const auto m = baseline_market();
  const auto f = baseline_functions();
  for (auto _ : state) {
    benchmark::DoNotOptimize(closed_form_equilibrium(m, f));
  }
}
BENCHMARK(BM_ClosedFormEquilibrium);

void BM_NewtonSolve(benchmark::State& state) {
  const auto m = baseline_market();
  const auto f = baseline_functions();
  const SpecificDemand sys(m, f);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_newton(sys, m, f));
  }
}
BENCHMARK(BM_NewtonSolve);

void BM_IterativeSolve(benchmark::State& state) {
  const auto m = baseline_market();
  const auto f = baseline_functions();
  const SpecificDemand sys(m, f);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_iterative(sys, m, f));
  }
}
BENCHMARK(BM_IterativeSolve);

void BM_LinearNewtonSolve(benchmark::State& state) {
  auto m = baseline_market();
  m.q = 4.2;
  const auto f = baseline_functions();
  const LinearDemand sys({2.0, 1.0, 0.5, 0.1, 0.1}, m, f);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_newton(sys, m, f));
  }
}
BENCHMARK(BM_LinearNewtonSolve);

void BM_StaticsReport(benchmark::State& state) {
  const auto m = baseline_market();
  const auto f = baseline_functions();
  for (auto _ : state) {
    benchmark::DoNotOptimize(specific_statics(m, f, Parameter::G));
  }
}
BENCHMARK(BM_StaticsReport);

void BM_OptimizeGuidance(benchmark::State& state) {
  const auto m = baseline_market();
  const auto f = baseline_functions();
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_guidance(m, f));
  }
}
BENCHMARK(BM_OptimizeGuidance);

void BM_SolveExtended(benchmark::State& state) {
  MarketPrimitives m{1.5376, 1.0, 0.1, 0.5, 0.0};
  PolicyFunctions f;
  f.prob = {0.4, 1.0};
  f.alpha = {0.3, 0.0};
  f.beta = {0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_extended(m, f));
  }
}
BENCHMARK(BM_SolveExtended);

void BM_SimulateAdjustment(benchmark::State& state) {
  const auto m = baseline_market();
  const auto f = baseline_functions();
  const SpecificDemand sys(m, f);
  AdjustmentConfig cfg;
  cfg.init = {1.2, 1.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(sys, m, f, cfg));
  }
}
BENCHMARK(BM_SimulateAdjustment);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
