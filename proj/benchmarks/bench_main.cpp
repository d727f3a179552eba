#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "minkflow/evolution.hpp"
#include "minkflow/frenet.hpp"
#include "minkflow/solitons.hpp"
#if MINKFLOW_BENCH_CLI
#include "minkflow/cli/expr.hpp"
#endif

using namespace minkflow;

namespace {

CurvatureProfile smooth(std::size_t n) {
  return CurvatureProfile::sample(SGrid(0.0, 2.0 * std::numbers::pi, n, Boundary::Periodic),
                                  [](double s) { return 2.0 + std::sin(s); },
                                  [](double s) { return std::cos(s); });
}

void BM_Type1Rhs(benchmark::State& state) {
  const auto p = smooth(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evolution_rhs(p, type1_velocity(p)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Type1Rhs)->Arg(1024)->Arg(8192);

void BM_Type2Rhs(benchmark::State& state) {
  const auto p = smooth(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evolution_rhs(p, type2_velocity(p)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Type2Rhs)->Arg(1024)->Arg(8192);

void BM_EvolveStep(benchmark::State& state) {
  const EvolutionState s0{0.0, smooth(static_cast<std::size_t>(state.range(0)))};
  const auto preset = type1_preset();
  for (auto _ : state) benchmark::DoNotOptimize(step(s0, preset, 1e-5));
}
BENCHMARK(BM_EvolveStep)->Arg(1024);

void BM_IntegrateFrame(benchmark::State& state) {
  const SGrid g(0.0, 10.0, static_cast<std::size_t>(state.range(0)), Boundary::OneSided);
  const auto p = CurvatureProfile::constant(g, 1.0, 1.0);
  FrameIntegrationOptions opts;
  opts.drift_limit = std::nullopt;
  for (auto _ : state) benchmark::DoNotOptimize(integrate_frame_s(p, FrenetFrame{}, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IntegrateFrame)->Arg(10001);

void BM_KinkResidualGrid(benchmark::State& state) {
  const auto p = kink_params(0.5, 1.0);
  const SolitonWindow w;
  for (auto _ : state) benchmark::DoNotOptimize(residual_type1(p, w));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(w.ns * w.nt));
}
BENCHMARK(BM_KinkResidualGrid);

#if MINKFLOW_BENCH_CLI
void BM_ParseExpr(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(cli::Expr::parse("2 + 0.1*sin(s) - sech(s/2)^2 * tanh(3*s)"));
}
BENCHMARK(BM_ParseExpr);

void BM_EvalExpr(benchmark::State& state) {
  const auto e = cli::Expr::parse("2 + 0.1*sin(s) - sech(s/2)^2 * tanh(3*s)");
  double s = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.eval(s));
    s += 1e-3;
  }
}
BENCHMARK(BM_EvalExpr);
#endif

}  // namespace

BENCHMARK_MAIN();
