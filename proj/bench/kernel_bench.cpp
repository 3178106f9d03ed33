// Parallel kernels against their serial reference versions.

#include "anyonqi/bipartition.hpp"
#include "anyonqi/sampling.hpp"

#include <benchmark/benchmark.h>

#include <map>

using namespace anyonqi;

namespace {

Rng fixture_rng(int n) { return task_rng(1, static_cast<std::uint64_t>(n)); }

struct Fixture {
  BasisPtr whole;
  Bipartition bip;
  Rng rng;
  BlockOperator rho;
  BlockOperator op_a;

  explicit Fixture(int n)
      : whole(enumerate_basis(shared_fibonacci(), TreeShape::grouped(n / 2, n - n / 2))),
        bip(whole),
        rng(fixture_rng(n)),
        rho(random_density(whole, rng)),
        op_a(random_hermitian(bip.subsystem(Side::A), rng)) {}
};

const Fixture& fixture(int n) {
  static std::map<int, Fixture> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, Fixture(n)).first;
  return it->second;
}

template <BlockOperator (*Trace)(const BlockOperator&, const Bipartition&, Side)>
void bm_partial_trace(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Trace(f.rho, f.bip, Side::B));
  state.counters["dim"] = static_cast<double>(f.whole->size());
}

template <BlockOperator (*Embed)(const BlockOperator&, const Bipartition&, Side)>
void bm_embed_local(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Embed(f.op_a, f.bip, Side::A));
  state.counters["dim"] = static_cast<double>(f.whole->size());
}

}  // namespace

BENCHMARK(bm_partial_trace<anyonqi::partial_trace>)->Name("partial_trace/parallel")->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_partial_trace<anyonqi::reference::partial_trace>)->Name("partial_trace/reference")->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_embed_local<anyonqi::embed_local>)->Name("embed_local/parallel")->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_embed_local<anyonqi::reference::embed_local>)->Name("embed_local/reference")->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
