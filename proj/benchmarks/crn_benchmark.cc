#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>

#include "crn/estimators.h"
#include "crn/ludo.h"
#include "crn/mdp.h"
#include "crn/seeding.h"
#include "crn/synthetic.h"
#include "crn/uct.h"

namespace crn {
namespace {

void BM_DeriveSeed(benchmark::State& state) {
  SeedContext context{"bench", "3", "1", 4, 0, std::string("pi:0123456789abcdef")};
  for (auto _ : state) {
    ++context.simulation_index;
    benchmark::DoNotOptimize(DeriveSeed(context));
  }
}
BENCHMARK(BM_DeriveSeed);

void BM_SeedDeriver(benchmark::State& state) {
  const SeedDeriver deriver("bench");
  const std::string_view key = "pi:0123456789abcdef";
  std::uint64_t j = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(deriver.Derive(3, 1, 4, ++j, &key));
  }
}
BENCHMARK(BM_SeedDeriver);

// One forward evaluation of a random policy; range(0) is the horizon.
void BM_Evaluate(benchmark::State& state) {
  const SyntheticSpec spec{7, 4, static_cast<int>(state.range(0)), 1};
  const TabularMdp mdp = GenerateMdp(spec);
  const Policy policy = GenerateAgreeingPolicies(spec, 1, 0, 1).front();
  const SeedScheme scheme = SeedScheme::DepthDependent(2);
  const SeedDeriver deriver("bench");
  std::uint64_t j = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(EvaluateReturn(mdp, policy, scheme, ++j, deriver));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Evaluate)->Arg(20)->Arg(100);

void BM_BackwardDraw(benchmark::State& state) {
  const SyntheticSpec spec{5, 3, 6, 2};
  const TabularMdp mdp = GenerateMdp(spec);
  const auto policies = GenerateAgreeingPolicies(spec, 2, 2, 2);
  std::uint64_t j = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(DrawBackward(mdp, policies[0], policies[1],
                                          EstimatorKind::XDD(2), ++j, "bench"));
  }
}
BENCHMARK(BM_BackwardDraw);

// One UCT decision on a synthetic MDP; range(0) is the simulation budget.
void BM_UctSynthetic(benchmark::State& state) {
  const TabularMdp mdp = GenerateMdp({7, 4, 20, 3});
  const TabularEnvironment env(mdp);
  PlanningConfig config;
  config.num_simulations = static_cast<int>(state.range(0));
  config.scheme = SeedScheme::DepthDependent(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        UctSearchRoot(env, env.Initial(), 1, config, "bench"));
  }
}
BENCHMARK(BM_UctSynthetic)->Arg(8)->Arg(64);

void BM_LudoRandomGame(benchmark::State& state) {
  const ludo::BoardMap board = ludo::DefaultBoard();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ludo::PlayRandomGame(board, ++seed));
  }
}
BENCHMARK(BM_LudoRandomGame);

void BM_LudoUctGame(benchmark::State& state) {
  const ludo::LudoEnvironment env;
  PlanningConfig config;
  config.num_simulations = static_cast<int>(state.range(0));
  std::uint64_t game = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ludo::PlayUctGame(env, config, ++game, "bench"));
  }
}
BENCHMARK(BM_LudoUctGame)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace crn

BENCHMARK_MAIN();
