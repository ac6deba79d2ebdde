#include <benchmark/benchmark.h>

#include "normsys/ecosystem.hpp"
#include "normsys/recognition.hpp"

using namespace normsys;

namespace {

NormFamily family(std::size_t consumers, bool cancel, bool fifo_vs_skip) {
  EcoConfig cfg = EcoConfig::uniform(1, consumers);
  cfg.include_new_agent = true;
  cfg.cancel_rule = cancel;
  const Ecosystem eco = gen_ecosystem(cfg);
  if (fifo_vs_skip) return ecosystem_family(eco, {norm_fifo(eco), norm_skip2(eco)});
  return ecosystem_family(eco, {norm_round_robin(eco), norm_fifo(eco)});
}

void BM_DecideNc1(benchmark::State& state) {
  const NormFamily fam = family(static_cast<std::size_t>(state.range(0)), true, false);
  std::size_t explored = 0;
  for (auto _ : state) explored = decide_nc1(fam).explored;
  state.counters["explored"] = static_cast<double>(explored);
}
BENCHMARK(BM_DecideNc1)->DenseRange(2, 5);

void BM_DecideNc2(benchmark::State& state) {
  const NormFamily fam = family(static_cast<std::size_t>(state.range(0)), false, false);
  std::size_t explored = 0;
  for (auto _ : state) explored = decide_nc2(fam).explored;
  state.counters["explored"] = static_cast<double>(explored);
}
BENCHMARK(BM_DecideNc2)->DenseRange(2, 5);

void BM_SubsetStructure(benchmark::State& state) {
  const NormFamily fam = family(static_cast<std::size_t>(state.range(0)), true, true);
  for (auto _ : state) benchmark::DoNotOptimize(explore_subset_structure(fam, false));
}
BENCHMARK(BM_SubsetStructure)->DenseRange(2, 4);

void BM_NfaGadget(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  std::vector<std::string> names;
  for (std::uint32_t q = 0; q < n; ++q) names.push_back("q" + std::to_string(q));
  Nfa nfa = Nfa::make(names, {"a", "b"});
  for (std::uint32_t q = 0; q < n; ++q) {
    nfa.add_transition(q, 0, (q + 1) % n);
    nfa.add_transition(q, 1, q);
    nfa.add_transition(q, 1, (q + 2) % n);
  }
  const NormFamily fam = build_nfa_recognition_instance(nfa);
  for (auto _ : state) benchmark::DoNotOptimize(decide_nc2(fam));
}
BENCHMARK(BM_NfaGadget)->RangeMultiplier(2)->Range(2, 16);

}  // namespace

BENCHMARK_MAIN();
