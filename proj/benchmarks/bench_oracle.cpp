#include <benchmark/benchmark.h>

#include "replidyn/bundled_games.hpp"
#include "replidyn/meanfield.hpp"
#include "replidyn/oracle.hpp"

using namespace replidyn;

namespace {

void BM_PinnedCostsCongestion3(benchmark::State& state) {
  const CongestionGame game = make_congestion3();
  Rng rng(3);
  const MixedProfile q = random_interior_profile(game.strategy_counts(), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(all_pinned_costs(game, q));
  }
}
BENCHMARK(BM_PinnedCostsCongestion3);

void BM_RosenthalExpectation(benchmark::State& state) {
  const CongestionGame game = make_congestion3();
  const ExpectedPotential potential(game, PotentialSpec::rosenthal());
  Rng rng(4);
  const MixedProfile q = random_interior_profile(game.strategy_counts(), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(potential.value(q));
  }
}
BENCHMARK(BM_RosenthalExpectation);

void BM_LexPotentialExpectation(benchmark::State& state) {
  const TaskAllocationGame game = make_taskalloc4();
  const ExpectedPotential potential(game, PotentialSpec::lex_task_allocation());
  Rng rng(5);
  const MixedProfile q = random_interior_profile(game.strategy_counts(), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(potential.value(q));
  }
}
BENCHMARK(BM_LexPotentialExpectation);

void BM_ExactOneStepDriftLb2(benchmark::State& state) {
  const CongestionGame lb2 = make_lb2();
  const ExpectedPotential potential(lb2, PotentialSpec::rosenthal());
  const DynamicsConfig config = DynamicsConfig::perturbed(0.05, 0.9, GammaSpec::affine(2.0));
  Rng rng(6);
  const MixedProfile q = random_interior_profile(lb2.strategy_counts(), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_one_step_drift(lb2, potential, q, config));
  }
}
BENCHMARK(BM_ExactOneStepDriftLb2);

void BM_Rk4StepCongestion3(benchmark::State& state) {
  const CongestionGame game = make_congestion3();
  const std::vector<double> p(3, 1.0 / 3.0);
  const VectorField field = replicator_field(game, p);
  Rng rng(7);
  const MixedProfile q = random_interior_profile(game.strategy_counts(), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rk4_step(field, q, 0.01));
  }
}
BENCHMARK(BM_Rk4StepCongestion3);

void BM_EnumeratePureNashTaskalloc4(benchmark::State& state) {
  const TaskAllocationGame game = make_taskalloc4();
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_pure_nash(game));
  }
}
BENCHMARK(BM_EnumeratePureNashTaskalloc4);

}  // namespace
