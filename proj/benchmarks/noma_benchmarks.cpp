#include <benchmark/benchmark.h>

#include "noma/channel.hpp"
#include "noma/ee.hpp"
#include "noma/ergodic.hpp"
#include "noma/rate.hpp"
#include "noma/rng.hpp"

namespace {

noma::SystemConfig config_for(int K) {
  noma::SystemConfig config;
  config.M = 2;
  config.K = K;
  config.R_D = 10.0;
  config.alpha = 3.0;
  config.rho = 100.0;
  config.seed = 12345;
  return config;
}

void BM_SampleChannel(benchmark::State& state) {
  const noma::SystemConfig config = config_for(static_cast<int>(state.range(0)));
  noma::Rng rng(config.seed);
  for (auto _ : state) {
    const std::vector<double> distances = noma::sample_placement(config, rng);
    benchmark::DoNotOptimize(noma::sample_channel(config, distances, rng));
  }
}
BENCHMARK(BM_SampleChannel)->Arg(4)->Arg(16);

void BM_SumRate(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const noma::SystemConfig config = config_for(K);
  noma::Rng rng(config.seed);
  const std::vector<double> distances = noma::sample_placement(config, rng);
  const noma::ChannelRealization realization = noma::sample_channel(config, distances, rng);
  const noma::PowerAllocation alloc = noma::PowerAllocation::linear_rule(K);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        noma::sum_rate(realization, config.rho, alloc, noma::EffectiveGainRule::MaxAntenna));
  }
}
BENCHMARK(BM_SumRate)->Arg(4)->Arg(16);

void BM_GcqSumRate(benchmark::State& state) {
  const int K = 4;
  noma::SystemConfig config = config_for(K);
  config.M = 1;
  const noma::PowerAllocation alloc = noma::PowerAllocation::linear_rule(K);
  const int nodes = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(noma::ergodic_sum_rate_gcq(config, alloc, nodes));
  }
}
BENCHMARK(BM_GcqSumRate)->Arg(10)->Arg(50)->Arg(200);

void BM_McSumRate(benchmark::State& state) {
  const int K = 4;
  noma::SystemConfig config = config_for(K);
  config.M = 1;
  const noma::PowerAllocation alloc = noma::PowerAllocation::linear_rule(K);
  const std::int64_t trials = state.range(0);
  const noma::Rng stream(config.seed);
  for (auto _ : state) {
    benchmark::DoNotOptimize(noma::ergodic_sum_rate_mc(config, alloc, trials, stream));
  }
  state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_McSumRate)->Arg(1000)->Arg(100000);

void BM_MaximizeEe(benchmark::State& state) {
  noma::PowerModel power;
  power.eta = 0.5;
  power.P_c = 1.0;
  power.P_RF = 1.0;
  power.P_T = 1.0e6;
  power.N_0 = 1.0;
  const int K = 16;
  const noma::AntennaBudget budget = noma::AntennaBudget::default_for(K);
  for (auto _ : state) {
    benchmark::DoNotOptimize(noma::maximize_ee(power, budget, K));
  }
}
BENCHMARK(BM_MaximizeEe);

}  // namespace
