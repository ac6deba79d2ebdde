#include <benchmark/benchmark.h>

#include "normsys/ecosystem.hpp"
#include "normsys/synthesis.hpp"

using namespace normsys;

namespace {

void BM_StaticSingleProducer(benchmark::State& state) {
  const Ecosystem eco = gen_ecosystem(EcoConfig::uniform(1, static_cast<std::size_t>(state.range(0))));
  const auto [phi1, phi2] = objectives(eco.config);
  const Formula both = Formula::conjunction(phi1, phi2);
  std::uint64_t tried = 0;
  for (auto _ : state) tried = synthesize_static(eco.mas, both).candidates;
  state.counters["candidates"] = static_cast<double>(tried);
}
BENCHMARK(BM_StaticSingleProducer)->DenseRange(2, 3);

void BM_DynamicSingleProducer(benchmark::State& state) {
  const Ecosystem eco = gen_ecosystem(EcoConfig::uniform(1, 2));
  const auto [phi1, phi2] = objectives(eco.config);
  const Formula both = Formula::conjunction(phi1, phi2);
  std::uint64_t tried = 0;
  for (auto _ : state) tried = synthesize_dynamic(eco.mas, both, static_cast<std::size_t>(state.range(0))).candidates;
  state.counters["candidates"] = static_cast<double>(tried);
}
BENCHMARK(BM_DynamicSingleProducer)->DenseRange(1, 2);

}  // namespace

BENCHMARK_MAIN();
