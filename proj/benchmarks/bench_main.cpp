#include <benchmark/benchmark.h>

#include <random>

#include <graphtex/descriptor.hpp>
#include <graphtex/fractal.hpp>
#include <graphtex/gac.hpp>
#include <graphtex/patch_graph.hpp>
#include <graphtex/synth.hpp>

using namespace graphtex;

namespace {

Image noise_image(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Image u(w, h);
  for (double& v : u.data()) v = static_cast<double>(rng() % 256);
  return u;
}

void BM_PatchDijkstra(benchmark::State& state) {
  const double rho = static_cast<double>(state.range(0));
  const Image u = noise_image(64, 64, 1);
  const PatchGraph g = euclidean_patch_graph(u, {32, 32}, rho, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(dijkstra(g));
  state.counters["vertices"] = g.size();
}
BENCHMARK(BM_PatchDijkstra)->Arg(3)->Arg(5)->Arg(8)->Arg(12);

void BM_Amoeba(benchmark::State& state) {
  const double rho = static_cast<double>(state.range(0));
  const Image u = noise_image(64, 64, 2);
  for (auto _ : state) benchmark::DoNotOptimize(adaptive_patch_graph(u, {32, 32}, rho, 0.1));
}
BENCHMARK(BM_Amoeba)->Arg(3)->Arg(5)->Arg(8)->Arg(12);

void BM_DescriptorMap(benchmark::State& state) {
  const auto setting = static_cast<GraphSetting>(state.range(0));
  const ShapeMask mask = letter_e_mask(48, 48);
  const Image img = synth_stripe_noise(48, 48, mask, 8, StripeOrientation::vertical, 7);
  DescriptorConfig cfg;
  cfg.setting = setting;
  for (auto _ : state) benchmark::DoNotOptimize(compute_descriptor_map(img, cfg, 1));
  state.SetItemsProcessed(state.iterations() * 48 * 48);
}
BENCHMARK(BM_DescriptorMap)
    ->Arg(static_cast<int>(GraphSetting::GwE))
    ->Arg(static_cast<int>(GraphSetting::GwA))
    ->Arg(static_cast<int>(GraphSetting::TwA))
    ->Arg(static_cast<int>(GraphSetting::TuA))
    ->Unit(benchmark::kMillisecond);

void BM_GacStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const EdgeMap e = edge_map(noise_image(n, n, 3), 1.0, 10.0);
  const LevelSetField f = signed_distance(CircleContour{0.5 * n, 0.5 * n, 0.3 * n}, n, n);
  GacParams p;
  for (auto _ : state) benchmark::DoNotOptimize(gac_step(f, e, p));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_GacStep)->Arg(80)->Arg(256);

void BM_Reinitialize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LevelSetField f = signed_distance(CircleContour{0.5 * n, 0.5 * n, 0.3 * n}, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(reinitialize(f));
}
BENCHMARK(BM_Reinitialize)->Arg(80)->Arg(256);

void BM_DimensionCurve(benchmark::State& state) {
  const auto grid = delta_grid(0.01);
  for (auto _ : state) benchmark::DoNotOptimize(dimension_curve(0.5, 1.0, grid));
}
BENCHMARK(BM_DimensionCurve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
