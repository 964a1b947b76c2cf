#include <benchmark/benchmark.h>

#include <vector>

#include "leaksense/leak_sensor.hpp"
#include "leaksense/leak_sim.hpp"
#include "leaksense/scaling_fit.hpp"
#include "leaksense/student_t.hpp"
#include "support/scenarios.hpp"

using namespace leaksense;

namespace {

SimParams params(double days) {
  return leaksense::testing::daily_leak_params(0.1, 0.17866, 86.0, days, 14.0, 0.005, 1);
}

void BM_SimulateAnalytic(benchmark::State& state) {
  const auto p = params(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_analytic(p));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(p.t_end / p.dt));
}
BENCHMARK(BM_SimulateAnalytic)->Arg(30)->Arg(365);

void BM_SimulateNumeric(benchmark::State& state) {
  const auto p = params(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_numeric(p));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(p.t_end / p.dt));
}
BENCHMARK(BM_SimulateNumeric)->Arg(30)->Arg(365);

void BM_FitScalingExponent(benchmark::State& state) {
  const auto p = params(static_cast<double>(state.range(0)));
  const auto trace = simulate_analytic(p);
  const auto samples = record_samples(export_fault_test(trace, OperationMode::Heating, 3600.0));
  const auto points = build_log_ratios(samples, p.initial_mass, p.initial_temp);
  for (auto _ : state) benchmark::DoNotOptimize(fit_scaling_exponent(points));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(points.size()));
}
BENCHMARK(BM_FitScalingExponent)->Arg(30)->Arg(365);

void BM_SlopeHomogeneity(benchmark::State& state) {
  const auto p = params(60.0);
  const auto trace = simulate_analytic(p);
  const auto samples = record_samples(export_fault_test(trace, OperationMode::Heating, 3600.0));
  const auto points = build_log_ratios(samples, p.initial_mass, p.initial_temp);
  for (auto _ : state) benchmark::DoNotOptimize(test_slope_homogeneity(points, points));
}
BENCHMARK(BM_SlopeHomogeneity);

void BM_StudentT(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(student_t_two_sided_p(2.0, 30.0));
}
BENCHMARK(BM_StudentT);

void BM_Diagnose(benchmark::State& state) {
  const auto p = params(static_cast<double>(state.range(0)));
  const auto trace = simulate_analytic(p);
  const auto records = export_fault_test(trace, OperationMode::Heating, 86400.0);
  const auto samples = daily_aggregate(records);
  DiagnoseConfig config;
  config.exponents[OperationMode::Heating] = control_exponent(p.c_m, p.c_p);
  for (auto _ : state) benchmark::DoNotOptimize(diagnose(samples, config));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(samples.size()));
}
BENCHMARK(BM_Diagnose)->Arg(180)->Arg(3650);

}  // namespace
BENCHMARK_MAIN();
