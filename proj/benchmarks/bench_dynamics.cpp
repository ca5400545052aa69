#include <benchmark/benchmark.h>

#include "replidyn/bundled_games.hpp"
#include "replidyn/dynamics.hpp"

using namespace replidyn;

namespace {

void BM_StepPlainLb2(benchmark::State& state) {
  const CongestionGame lb2 = make_lb2();
  const DynamicsConfig config = DynamicsConfig::plain(0.01, GammaSpec::affine(2.0));
  LearnerState learner(MixedProfile::uniform(lb2.strategy_counts()), 1ULL);
  for (auto _ : state) {
    step(learner, lb2, config);
    benchmark::DoNotOptimize(learner.q);
  }
}
BENCHMARK(BM_StepPlainLb2);

void BM_StepPerturbedLb2(benchmark::State& state) {
  const CongestionGame lb2 = make_lb2();
  const DynamicsConfig config = DynamicsConfig::perturbed(0.01, 0.9, GammaSpec::affine(2.0));
  LearnerState learner(MixedProfile::uniform(lb2.strategy_counts()), 1ULL);
  for (auto _ : state) {
    step(learner, lb2, config);
    benchmark::DoNotOptimize(learner.q);
  }
}
BENCHMARK(BM_StepPerturbedLb2);

void BM_StepCongestion3(benchmark::State& state) {
  const CongestionGame game = make_congestion3();
  const DynamicsConfig config = DynamicsConfig::plain(0.01, GammaSpec::affine(8.0));
  LearnerState learner(MixedProfile::uniform(game.strategy_counts()), 1ULL);
  for (auto _ : state) {
    step(learner, game, config);
    benchmark::DoNotOptimize(learner.q);
  }
}
BENCHMARK(BM_StepCongestion3);

void BM_SampleRoundTaskalloc4(benchmark::State& state) {
  const TaskAllocationGame game = make_taskalloc4();
  const DynamicsConfig config = DynamicsConfig::perturbed(0.01, 0.9, GammaSpec::affine(15.0));
  LearnerState learner(MixedProfile::uniform(game.strategy_counts()), 1ULL);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_round(learner, game, config));
  }
}
BENCHMARK(BM_SampleRoundTaskalloc4);

}  // namespace
