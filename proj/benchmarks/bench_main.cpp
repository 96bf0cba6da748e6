#include <benchmark/benchmark.h>

#include "potts/decay.hpp"
#include "potts/exact.hpp"
#include "potts/generators.hpp"
#include "potts/saw.hpp"

namespace {

using namespace potts;

PottsParams P(int q, const char* beta) { return PottsParams(q, Rational::parse_decimal(beta)); }

void BM_MarginalGnp(benchmark::State& state) {
  const Instance inst(gen::gnp(2000, 4.0, 1), P(17, "0"));
  const int depth = static_cast<int>(state.range(0));
  std::uint64_t calls = 0;
  for (auto _ : state) {
    const auto r = estimate_marginals(inst, 0, depth);
    calls = r.diagnostics.recursive_calls;
    benchmark::DoNotOptimize(r.raw.data());
  }
  state.counters["calls"] = static_cast<double>(calls);
}
BENCHMARK(BM_MarginalGnp)->DenseRange(1, 6)->Unit(benchmark::kMillisecond);

void BM_MarginalSharing(benchmark::State& state) {
  const Instance inst(gen::gnp(2000, 4.0, 1), P(17, "0"));
  MargOptions opts;
  opts.share_subresults = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_marginals(inst, 0, 3, opts).raw.data());
}
BENCHMARK(BM_MarginalSharing)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SoftMarginalPath(benchmark::State& state) {
  const Instance inst(gen::path(200), P(4, "0.5"));
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_marginals(inst, 100, depth).raw.data());
}
BENCHMARK(BM_SoftMarginalPath)->RangeMultiplier(2)->Range(4, 64);

void BM_EDelta(benchmark::State& state) {
  const Graph g = gen::gnp(2000, 4.0, 1);
  const DegreeWeight delta = potts_delta(P(17, "0"));
  const auto len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(e_delta(g, 0, len, delta));
}
BENCHMARK(BM_EDelta)->DenseRange(2, 8, 2);

void BM_ExactPartition(benchmark::State& state) {
  const Instance inst(gen::cycle(static_cast<std::size_t>(state.range(0))), P(3, "0.5"));
  for (auto _ : state) benchmark::DoNotOptimize(exact::partition(inst));
}
BENCHMARK(BM_ExactPartition)->DenseRange(6, 14, 4);

}  // namespace

BENCHMARK_MAIN();
