// Microbenchmarks for the hot paths: pointwise transform evaluation, grid
// sampling and shell accumulation.  Run with --benchmark_filter=... to pick
// a family.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "fspec/energy.hpp"
#include "fspec/measures.hpp"
#include "fspec/transform.hpp"

namespace {

using namespace fspec;

Measure cantor_measure() {
  return make_measure(
      SelfSimilarMeasure{1.0 / 3.0, {0.0, 2.0 / 3.0}, {0.5, 0.5}});
}

RieszProductMeasure riesz_family(int count) {
  RieszProductMeasure r;
  std::int64_t f = 3;
  for (int k = 0; k < count; ++k) {
    r.coefficients.push_back(0.8);
    r.frequencies.push_back(f);
    if (k + 1 < count) f *= 3;
  }
  return r;
}

void BM_SelfSimilarEval(benchmark::State& state) {
  const Measure m = cantor_measure();
  const Vec z{double(state.range(0)), 0.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(eval_transform(m, z));
}
BENCHMARK(BM_SelfSimilarEval)->Arg(64)->Arg(4096)->Arg(65536);

void BM_RieszCoefficient(benchmark::State& state) {
  const RieszProductMeasure r = riesz_family(16);
  std::int64_t m = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(riesz_coefficient(r, m));
    m = (m + 2718281) % 43046721;
  }
}
BENCHMARK(BM_RieszCoefficient);

void BM_RieszOffLattice(benchmark::State& state) {
  const Measure m = make_measure(riesz_family(12));
  const double z = double(state.range(0)) + 0.375;
  for (auto _ : state)
    benchmark::DoNotOptimize(eval_transform(m, {z, 0.0, 0.0}));
}
BENCHMARK(BM_RieszOffLattice)->Arg(100)->Arg(10000);

void BM_CurveLift(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        eval_curve_transform(4.0, double(state.range(0)), 17.0));
}
BENCHMARK(BM_CurveLift)->Arg(32)->Arg(1024);

void BM_SampleLattice(benchmark::State& state) {
  const Measure m = make_measure(riesz_family(12));
  const FrequencyGrid grid =
      FrequencyGrid::line_lattice(int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sample_grid(m, grid, {}));
}
BENCHMARK(BM_SampleLattice)->Arg(10)->Arg(14);

void BM_ShellSums(benchmark::State& state) {
  const TransformSamples samples =
      sample_grid(cantor_measure(), FrequencyGrid::line(12, 1.0), {});
  for (auto _ : state)
    benchmark::DoNotOptimize(shell_log_sums(samples, 4.0, -0.5));
}
BENCHMARK(BM_ShellSums);

void BM_BallProfile(benchmark::State& state) {
  const TransformSamples samples =
      sample_grid(cantor_measure(), FrequencyGrid::line(12, 1.0), {});
  for (auto _ : state)
    benchmark::DoNotOptimize(ball_average_profile(samples, 0.5));
}
BENCHMARK(BM_BallProfile);

}  // namespace

BENCHMARK_MAIN();
