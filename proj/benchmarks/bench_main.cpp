#include <benchmark/benchmark.h>

#include "semik/hull.hpp"
#include "semik/ktheory.hpp"
#include "semik/presentation.hpp"
#include "semik/smashlab.hpp"
#include "semik/tiling.hpp"

using namespace semik;

static void BM_HullGenerate(benchmark::State& state) {
  auto P = make_preset("bs", {{"k", 2}, {"l", 3}});
  for (auto _ : state) {
    Hull h(P.model, {static_cast<int>(state.range(0)), 6});
    h.generate();
    benchmark::DoNotOptimize(h.elements().size());
  }
}
BENCHMARK(BM_HullGenerate)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_HullLaws(benchmark::State& state) {
  auto P = make_preset("free", {{"n", 2}});
  Hull h(P.model, {3, 6});
  h.generate();
  for (auto _ : state) benchmark::DoNotOptimize(check_inverse_laws(h).checked);
}
BENCHMARK(BM_HullLaws)->Unit(benchmark::kMillisecond);

static void BM_SmashVerify(benchmark::State& state) {
  const char* names[] = {"z2_swap", "z4_swap", "s3_atoms"};
  auto lab = smashlab_example(names[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(lab.report({"all"}));
  state.SetLabel(names[state.range(0)]);
}
BENCHMARK(BM_SmashVerify)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_TilingGamma(benchmark::State& state) {
  std::string pts;
  for (int i = 0; i < state.range(0); ++i) pts += (i ? "," : "") + std::to_string(i * i);
  auto D = PointSet::parse(pts);
  for (auto _ : state) benchmark::DoNotOptimize(gamma_ktheory(D).summands.size());
}
BENCHMARK(BM_TilingGamma)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_Smith(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<std::vector<long long>> m(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (7 * i + 3 * j * j + 1) % 11 - 5;
  for (auto _ : state) benchmark::DoNotOptimize(smith_diagonal(m));
}
BENCHMARK(BM_Smith)->RangeMultiplier(2)->Range(4, 16);
BENCHMARK_MAIN();
