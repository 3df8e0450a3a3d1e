#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "ialg/checks.hpp"
#include "ialg/corpus.hpp"
#include "ialg/qgr.hpp"
#include "ialg/session.hpp"

using namespace ialg;
using namespace ialg::testing;

static void BM_FreeComponentDim(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    auto b = free_xy();
    benchmark::DoNotOptimize(b->dim({0, 0}, {n, n}));
  }
}
BENCHMARK(BM_FreeComponentDim)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

static void BM_PolynomialComponentDim(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    auto d = poly_xy();
    benchmark::DoNotOptimize(d->dim({0, 0}, {n, n}));
  }
}
BENCHMARK(BM_PolynomialComponentDim)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

static void BM_PolynomialTailSweep(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    auto d = poly_xy();
    benchmark::DoNotOptimize(check_tails_cocompact(d, box(d, {0, 0}, {n, n})).verdict);
  }
}
BENCHMARK(BM_PolynomialTailSweep)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

static void BM_FreeTailGrowth(benchmark::State& state) {
  const std::int64_t k = state.range(0);
  for (auto _ : state) {
    auto b = free_xy();
    WindowChain chain;
    for (std::int64_t t = k - 2; t <= k; ++t) chain.push_back(box(b, {0, 0}, {t, 3}));
    benchmark::DoNotOptimize(tail_generation(b, {0, 0}, {1, 1}, chain).outcome.verdict);
  }
}
BENCHMARK(BM_FreeTailGrowth)->DenseRange(4, 6, 1)->Unit(benchmark::kMillisecond);

static void BM_StrongIndexing(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    auto d = poly_xy();
    benchmark::DoNotOptimize(check_strongly_indexed(d, box(d, {0, 0}, {n, n})).verdict);
  }
}
BENCHMARK(BM_StrongIndexing)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

static void BM_QgrHomIntoSimple(benchmark::State& state) {
  for (auto _ : state) {
    auto d = poly_xy();
    const auto w = box(d, {0, 0}, {5, 5});
    benchmark::DoNotOptimize(qgr_hom(free_at(d, {0, 0}), simple_xy(d, {0, 0}), diagonal_chain(w), w).stabilized);
  }
}
BENCHMARK(BM_QgrHomIntoSimple)->Unit(benchmark::kMillisecond);

static void BM_CorpusRun(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& e : corpus()) benchmark::DoNotOptimize(run_text(e.text, RunOptions{}).status);
  }
}
BENCHMARK(BM_CorpusRun)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
