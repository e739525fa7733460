#include <benchmark/benchmark.h>

#include "qdissect/congruences.hpp"
#include "qdissect/dissector.hpp"
#include "qdissect/eta.hpp"
#include "qdissect/schur.hpp"

using namespace qdissect;

namespace {

const char* kSExpr = "f2*f3/(f1*f6^2)";

RingSpec ring_arg(std::int64_t m) { return m == 0 ? RingSpec::integers() : RingSpec::residues(static_cast<std::uint64_t>(m)); }

Series dense(RingSpec ring, std::size_t n) {
  return Series::make(ring, n, [](std::size_t k) { return Integer(static_cast<long>(k * 2654435761u % 1000) - 500); });
}

}  // namespace

// dense x dense, the worst case for mul
static void BM_MulDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RingSpec ring = ring_arg(state.range(1));
  const Series a = dense(ring, n), b = dense(ring, n);
  for (auto _ : state) benchmark::DoNotOptimize(mul(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MulDense)->ArgsProduct({{500, 2000}, {0, 16, 1000003}})->Unit(benchmark::kMillisecond);

// dense x f_r, the common case inside eta expansion
static void BM_MulByEta(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RingSpec ring = ring_arg(state.range(1));
  const Series a = dense(ring, n), f = expand_eta(1, n, ring);
  for (auto _ : state) benchmark::DoNotOptimize(mul(a, f));
}
BENCHMARK(BM_MulByEta)->ArgsProduct({{2000, 20000}, {0, 16}})->Unit(benchmark::kMillisecond);

static void BM_ExpandS(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RingSpec ring = ring_arg(state.range(1));
  const EtaExpression e = parse(kSExpr);
  for (auto _ : state) benchmark::DoNotOptimize(expand_expression(e, n, ring));
}
BENCHMARK(BM_ExpandS)->ArgsProduct({{2000, 100000}, {0, 16}})->Unit(benchmark::kMillisecond);

static void BM_SSeries(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(s_series(n));
}
BENCHMARK(BM_SSeries)->Arg(5000)->Arg(40000)->Unit(benchmark::kMillisecond);

static void BM_Scan(benchmark::State& state) {
  const SchurSeries table = s_series(40000);
  ScanOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan(opts, table));
}
BENCHMARK(BM_Scan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Extract(benchmark::State& state) {
  RootProvider roots;
  const Series root = roots.get("S", 512 * 2000, RingSpec::residues(16));
  const ExtractionRecipe recipe{{{256, 235}, {2, 1}}};
  for (auto _ : state) benchmark::DoNotOptimize(recipe.apply(root));
}
BENCHMARK(BM_Extract)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
