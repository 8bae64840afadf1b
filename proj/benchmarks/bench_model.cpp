#include <benchmark/benchmark.h>

#include <random>

#include "tradenet/calibration.hpp"
#include "tradenet/dataio.hpp"
#include "tradenet/metrics.hpp"
#include "tradenet/scoring.hpp"
#include "tradenet/simulation.hpp"

using namespace tradenet;

namespace {

const Dataset& synthetic() {
  static const Dataset ds = dataio::gen_synthetic(dataio::SyntheticConfig{}).first;
  return ds;
}

void BM_FinalScore(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const GlobalParams g = reference_params();
  const WeightPreferences p{1.2, 1.5, 1.8, 1.1};
  double s[4] = {u(rng), u(rng), u(rng), u(rng)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(scoring::final_score(s[0], s[1], s[2], s[3], g, p));
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_FinalScore);

void BM_PrepareModel(benchmark::State& state) {
  const auto& ds = synthetic();
  for (auto _ : state) {
    sim::PreparedModel m(ds);
    benchmark::DoNotOptimize(m.links().data());
  }
}
BENCHMARK(BM_PrepareModel)->Unit(benchmark::kMillisecond);

void BM_Run(benchmark::State& state) {
  sim::ModelOptions o;
  o.threads = static_cast<unsigned>(state.range(0));
  const sim::PreparedModel m(synthetic(), o);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sim::run(m, reference_params(), seed++).iterations_used);
}
BENCHMARK(BM_Run)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State& state) {
  const sim::PreparedModel m(synthetic());
  for (auto _ : state) benchmark::DoNotOptimize(calibration::evaluate(m, reference_params(), 0));
}
BENCHMARK(BM_Evaluate)->Unit(benchmark::kMillisecond);

void BM_Components(benchmark::State& state) {
  const auto& ds = synthetic();
  const auto active = sim::run(ds, reference_params(), 0).active_links;
  std::vector<AgentId> agents;
  for (const auto& s : ds.sellers) agents.push_back(s.id);
  for (const auto& b : ds.buyers) agents.push_back(b.id);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::components(agents, active, true).count);
}
BENCHMARK(BM_Components)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
