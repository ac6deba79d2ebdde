#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "normsys/ctl.hpp"
#include "normsys/ecosystem.hpp"
#include "normsys/kripke.hpp"

using namespace normsys;

namespace {

StateGraph ring_with_chords(std::size_t n) {
  StateGraph g;
  std::mt19937 rng(1);
  g.propositions = {"p", "q"};
  g.successors.resize(n);
  g.labels.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    g.successors[v] = {static_cast<NodeId>((v + 1) % n), static_cast<NodeId>(rng() % n)};
    std::sort(g.successors[v].begin(), g.successors[v].end());
    g.successors[v].erase(std::unique(g.successors[v].begin(), g.successors[v].end()), g.successors[v].end());
    if (rng() % 3 == 0) g.labels[v].push_back(0);
    if (rng() % 5 == 0) g.labels[v].push_back(1);
  }
  g.initial = {0};
  return g;
}

Formula nested() {
  const Formula p = Formula::atom("p");
  const Formula q = Formula::atom("q");
  return Formula::unary(FormulaKind::AG,
                        Formula::implication(p, Formula::unary(FormulaKind::EF, Formula::conjunction(
                                                    q, Formula::unary(FormulaKind::EG, Formula::negation(p))))));
}

void BM_SatSet(benchmark::State& state) {
  const StateGraph g = ring_with_chords(static_cast<std::size_t>(state.range(0)));
  const Formula f = nested();
  for (auto _ : state) benchmark::DoNotOptimize(ctl::sat_set(g, f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SatSet)->RangeMultiplier(4)->Range(64, 65536)->Complexity();

void BM_NaiveSatSet(benchmark::State& state) {
  const StateGraph g = ring_with_chords(static_cast<std::size_t>(state.range(0)));
  const Formula f = nested();
  for (auto _ : state) benchmark::DoNotOptimize(ctl::naive_sat_set(g, f));
}
BENCHMARK(BM_NaiveSatSet)->RangeMultiplier(4)->Range(16, 256);

void BM_CheckInstantiation(benchmark::State& state) {
  EcoConfig cfg = EcoConfig::uniform(2, 3);
  cfg.requirements = {{"g_1"}, {"g_2"}, {"g_1", "g_2"}};
  const Ecosystem eco = gen_ecosystem(cfg);
  const auto [phi1, phi2] = objectives(cfg);
  const Formula both = Formula::conjunction(phi1, phi2);
  const KripkeStructure k = apply_norm(eco.mas, state.range(0) ? norm_fifo(eco) : norm_round_robin(eco));
  for (auto _ : state) benchmark::DoNotOptimize(ctl::check(reachable(k), both));
}
BENCHMARK(BM_CheckInstantiation)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
