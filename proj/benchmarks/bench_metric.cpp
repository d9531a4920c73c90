#include <benchmark/benchmark.h>

#include "rdsm/independence.hpp"
#include "rdsm/kernel.hpp"
#include "rdsm/metric.hpp"
#include "rdsm/simulate.hpp"

namespace {

rdsm::PathEnsemble make_ensemble(int n_paths, int t_len, std::uint64_t seed) {
  rdsm::RotationSpec spec;
  spec.alpha_mod = 0.9;
  spec.theta = 0.25;
  spec.sigma = 0.1;
  return rdsm::simulate_rotation(spec, n_paths, t_len, seed);
}

void BM_EstimateL_m1(benchmark::State& state) {
  const auto e1 = make_ensemble(static_cast<int>(state.range(0)), 21, 1);
  const auto e2 = make_ensemble(static_cast<int>(state.range(0)), 21, 2);
  rdsm::MetricConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(rdsm::estimate_l(e1, e2, cfg));
}
BENCHMARK(BM_EstimateL_m1)->Arg(10)->Arg(50);

void BM_EstimateL_m2(benchmark::State& state) {
  const auto e1 = make_ensemble(static_cast<int>(state.range(0)), 21, 1);
  const auto e2 = make_ensemble(static_cast<int>(state.range(0)), 21, 2);
  rdsm::MetricConfig cfg;
  cfg.m = 2;
  for (auto _ : state) benchmark::DoNotOptimize(rdsm::estimate_l(e1, e2, cfg));
}
BENCHMARK(BM_EstimateL_m2)->Arg(5)->Arg(10);

void BM_EstimateLTilde_m2(benchmark::State& state) {
  const auto e1 = make_ensemble(static_cast<int>(state.range(0)), 21, 1);
  const auto e2 = make_ensemble(static_cast<int>(state.range(0)), 21, 2);
  rdsm::MetricConfig cfg;
  cfg.m = 2;
  cfg.variant = rdsm::MetricVariant::SharedOmega;
  for (auto _ : state)
    benchmark::DoNotOptimize(rdsm::estimate_l_tilde(e1, e2, cfg));
}
BENCHMARK(BM_EstimateLTilde_m2)->Arg(10)->Arg(20);

void BM_Hsic(benchmark::State& state) {
  const auto e1 = make_ensemble(static_cast<int>(state.range(0)), 3, 1);
  const auto e2 = make_ensemble(static_cast<int>(state.range(0)), 3, 2);
  const auto xs = e1.slice_at_time(1);
  const auto ys = e2.slice_at_time(1);
  rdsm::Kernel k;
  for (auto _ : state) benchmark::DoNotOptimize(rdsm::hsic(xs, ys, k));
}
BENCHMARK(BM_Hsic)->Arg(20)->Arg(100);

void BM_DetSmall(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(m, m);
  for (auto _ : state) benchmark::DoNotOptimize(rdsm::det_small(a));
}
BENCHMARK(BM_DetSmall)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
