#include <benchmark/benchmark.h>

#include "hugeobj/fixed_weight.hpp"
#include "hugeobj/generators.hpp"
#include "hugeobj/permutation.hpp"
#include "hugeobj/regular_graphs.hpp"
#include "hugeobj/support_boost.hpp"

using namespace hugeobj;

namespace {

void BM_OracleUniform(benchmark::State& state) {
  OracleSeed seed("bench-seed");
  std::uint64_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle_uniform(seed, Label("u", i++)));
}
BENCHMARK(BM_OracleUniform);

void BM_SeededPermutation(benchmark::State& state) {
  OracleSeed seed("bench-perm");
  SeededPermutation perm(static_cast<std::uint64_t>(state.range(0)), seed, Label("p"));
  std::uint64_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(perm.forward(i++ % perm.size()));
}
BENCHMARK(BM_SeededPermutation)->Arg(16)->Arg(1024)->Arg(1 << 16);

void BM_MwFixedWeight(benchmark::State& state) {
  const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
  std::vector<double> p(n, 0.25);
  const std::uint64_t k = n / 4;
  for (auto _ : state) benchmark::DoNotOptimize(mw_fixed_weight(p, k, 0.1));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MwFixedWeight)->Arg(64)->Arg(256)->Complexity();

void BM_FixedWeightQuery(benchmark::State& state) {
  DomainSpec dom = DomainSpec::bitstrings(10);
  Rng rng(1);
  GeneratedFunction f = gen_random_support_k(1024, 128, rng);
  CappedPredictor p;
  p.domain = dom;
  p.base = 0.0;
  auto tbl = f.table;
  p.append({[tbl](Element x) { return 0.9 * (*tbl)[x] + 0.0125; }, 1.0, "t"});
  FixedWeightModel model(p, 128, 0.05);
  OracleSeed seed("bench-fw");
  model.eval(seed, 0);  // warm the leaf caches
  Element x = 0;
  for (auto _ : state) benchmark::DoNotOptimize(model.eval(seed, x++ % 1024));
}
BENCHMARK(BM_FixedWeightQuery);

void BM_RejectionDraw(benchmark::State& state) {
  DomainSpec dom = DomainSpec::indexed(1 << 12);
  ImplementationHandle impl =
      rejection_sampler_impl(CappedPredictor::constant(dom, 0.25));
  Rng rng(2);
  OracleSeed seed = impl.fresh_seed(rng);
  for (auto _ : state) benchmark::DoNotOptimize(impl.answer(seed, rng, 0));
}
BENCHMARK(BM_RejectionDraw);

void BM_PortMate(benchmark::State& state) {
  Rng rng(3);
  GeneratedGraph g = gen_block_regular({400, 400, 400}, 6, rng);
  UniformDegreeModel model(g.partition, *g.cell_counts, 6);
  OracleSeed seed("bench-ud");
  Element u = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.mate(seed, u % 1200, static_cast<int>(u % 6)));
    ++u;
  }
}
BENCHMARK(BM_PortMate);

}  // namespace

BENCHMARK_MAIN();
