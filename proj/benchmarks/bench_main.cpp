#include <benchmark/benchmark.h>

#include "imcf/hypersurface.hpp"
#include "imcf/kottler.hpp"
#include "imcf/solver.hpp"

using namespace imcf;

namespace {

GraphState perturbed(int m) {
  const FourierMode modes[] = {{{1, 0}, 0.1, 0.0}, {{0, 1}, 0.05, 0.0}};
  return GraphState::fourier(AmbientModel::flat_torus(3), CrossSectionGrid(2, m), 1.0, modes);
}

void BM_MeanCurvature(benchmark::State& state) {
  const auto st = perturbed(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(surface::mean_curvature(st));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(st.size()));
}
BENCHMARK(BM_MeanCurvature)->Arg(32)->Arg(64)->Arg(128);

void BM_SurfaceEvaluate(benchmark::State& state) {
  const auto st = perturbed(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(surface::evaluate(st));
}
BENCHMARK(BM_SurfaceEvaluate)->Arg(64);

void BM_Rk4Step(benchmark::State& state) {
  const auto st = perturbed(static_cast<int>(state.range(0)));
  const double dt = flow::stable_dt(st, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(flow::step(st, dt));
}
BENCHMARK(BM_Rk4Step)->Arg(32)->Arg(64);

void BM_HorizonRadius(benchmark::State& state) {
  const kottler::KottlerParams p{AmbientModel(5, -1, 1.0), 2.5};
  for (auto _ : state) benchmark::DoNotOptimize(kottler::horizon_radius(p));
}
BENCHMARK(BM_HorizonRadius);

void BM_EmbeddingProfile(benchmark::State& state) {
  const kottler::KottlerParams p{AmbientModel::surface_of_genus(2), 3.0};
  for (auto _ : state) benchmark::DoNotOptimize(kottler::embedding_profile(p, 50.0, 0.01));
}
BENCHMARK(BM_EmbeddingProfile)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
