#include <benchmark/benchmark.h>

#include "magma/cnf.hpp"
#include "magma/corpus.hpp"
#include "magma/iso.hpp"
#include "magma/search.hpp"

using namespace magma;
using P = Predicate;

namespace {

SearchSpec spec_of(int n, std::vector<Constraint> constraints) {
  SearchSpec s;
  s.n = n;
  s.constraints = std::move(constraints);
  return s;
}

void BM_FullReport(benchmark::State& state, const char* name) {
  const auto& m = corpus_find(name)->table;
  for (auto _ : state) benchmark::DoNotOptimize(full_report(m));
}
BENCHMARK_CAPTURE(BM_FullReport, witness5, "witness5");
BENCHMARK_CAPTURE(BM_FullReport, witness10, "witness10");
BENCHMARK_CAPTURE(BM_FullReport, hNotD10, "hNotD10");

void BM_VerifyCorpus(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& w : corpus_all()) benchmark::DoNotOptimize(compare_expected(full_report(w.table), w.expected));
  }
}
BENCHMARK(BM_VerifyCorpus);

void BM_SearchOrder4(benchmark::State& state) {
  auto spec = spec_of(4, {{P::e2pm, true}, {P::h, true}});
  std::uint64_t nodes = 0;
  for (auto _ : state) nodes = search(spec).nodes;
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_SearchOrder4)->Unit(benchmark::kMillisecond);

void BM_SearchRdh5(benchmark::State& state) {
  auto spec = spec_of(5, {{P::e2pm, true}, {P::r_mutual, true}, {P::d, true}, {P::h, true}});
  spec.limit = 1;
  spec.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search(spec));
}
BENCHMARK(BM_SearchRdh5)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_KCombinator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_k_combinator(n));
}
BENCHMARK(BM_KCombinator)->DenseRange(2, 4);

void BM_Isomorphisms(benchmark::State& state) {
  const auto& m = corpus_find("witness10")->table;
  auto image = transport(m, sample_absorber_fixing_permutations(m, 1, 3).front());
  for (auto _ : state) benchmark::DoNotOptimize(find_isomorphisms(m, image));
}
BENCHMARK(BM_Isomorphisms);

void BM_InvarianceSample(benchmark::State& state) {
  const auto& m = corpus_find("witness10")->table;
  auto perms = sample_absorber_fixing_permutations(m, 100, 1);
  for (auto _ : state) {
    for (const auto& p : perms) benchmark::DoNotOptimize(verify_capability_invariance(m, p));
  }
}
BENCHMARK(BM_InvarianceSample)->Unit(benchmark::kMillisecond);

void BM_Encode(benchmark::State& state) {
  auto spec = spec_of(static_cast<int>(state.range(0)),
                      {{P::e2pm, true}, {P::r_mutual, true}, {P::d, true}, {P::h, true}});
  std::size_t clauses = 0;
  for (auto _ : state) clauses = encode(spec).clauses.size();
  state.counters["clauses"] = static_cast<double>(clauses);
}
BENCHMARK(BM_Encode)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
