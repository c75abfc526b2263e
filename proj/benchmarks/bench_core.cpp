#include <benchmark/benchmark.h>

#include <bratu/bdi_domain.hpp>
#include <bratu/ci.hpp>
#include <bratu/oracle.hpp>
#include <bratu/sampling.hpp>
#include <bratu/variational.hpp>

using namespace bratu;

namespace {

GeneratorBDI twist_free(Index n, Index r) {
  const auto g = random_generator_bdi(n, r, 42);
  return GeneratorBDI::make(g.b(), g.a(), Matrix::Zero(n, n));
}

void BM_Expm(benchmark::State& state) {
  const Index n = state.range(0);
  const Matrix m = random_generator_bdi(n, 2, 1).embed();
  for (auto _ : state) benchmark::DoNotOptimize(expm(m));
}
BENCHMARK(BM_Expm)->Arg(1)->Arg(3)->Arg(6);

void BM_SeriesExpm(benchmark::State& state) {
  const Matrix m = random_generator_bdi(state.range(0), 2, 1).embed();
  for (auto _ : state) benchmark::DoNotOptimize(oracle::series_expm(m));
}
BENCHMARK(BM_SeriesExpm)->Arg(1)->Arg(3)->Arg(6);

void BM_BlockGauss(benchmark::State& state) {
  const auto point = random_omega_bdi(state.range(0), 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(block_gauss(point));
}
BENCHMARK(BM_BlockGauss)->Arg(1)->Arg(3)->Arg(6);

void BM_BratuSolution(benchmark::State& state) {
  const auto gen = twist_free(state.range(0), 2);
  const auto grid = uniform_grid(0.0, 1.0, 101);
  for (auto _ : state) benchmark::DoNotOptimize(bratu_solution(gen, grid));
}
BENCHMARK(BM_BratuSolution)->Arg(1)->Arg(3)->Arg(6);

void BM_ElSystem(benchmark::State& state) {
  const auto gen = random_generator_bdi(state.range(0), 2, 3);
  const auto grid = uniform_grid(0.0, 1.0, 101);
  for (auto _ : state) benchmark::DoNotOptimize(el_system_residuals(gen, grid));
}
BENCHMARK(BM_ElSystem)->Arg(1)->Arg(3)->Arg(6);

void BM_DeltaH(benchmark::State& state) {
  const auto gen = random_generator_bdi(state.range(0), 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(delta_h(gen, 0.7));
}
BENCHMARK(BM_DeltaH)->Arg(1)->Arg(3)->Arg(6);

void BM_ClosedForm(benchmark::State& state) {
  const auto f = svd_factors(BoundedGenerator::from_bdi(random_generator_bdi(state.range(0), 2, 5)));
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_h(f, 0.7));
}
BENCHMARK(BM_ClosedForm)->Arg(1)->Arg(3)->Arg(6);

void BM_PropCi(benchmark::State& state) {
  const auto gen = random_generator_ci(state.range(0), 6);
  for (auto _ : state) benchmark::DoNotOptimize(prop_ci_h(gen, 0.7));
}
BENCHMARK(BM_PropCi)->Arg(1)->Arg(3)->Arg(6);

void BM_Rk4(benchmark::State& state) {
  const Index n = state.range(0);
  const auto gen = twist_free(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        oracle::integrate_bratu_bdi(Matrix::Identity(n, n), gen.b(), gen.a(), {0.0, 1.0}, 1e-2));
  }
}
BENCHMARK(BM_Rk4)->Arg(1)->Arg(3)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
