#include <doctest.h>

#include <cmath>

#include "replidyn/bundled_games.hpp"
#include "replidyn/dynamics.hpp"
#include "replidyn/game_ops.hpp"

using namespace replidyn;

TEST_CASE("affine gamma evaluation") {
  const GammaSpec gamma = GammaSpec::affine(2.0);
  CHECK(gamma_eval(gamma, 0.0) == doctest::Approx(1.0));
  CHECK(gamma_eval(gamma, 1.0) == doctest::Approx(0.5));
  CHECK(gamma_eval(gamma, 2.0 - 1e-12) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(gamma_eval(gamma, 2.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(gamma_eval(gamma, -0.1), ConfigError);
  CHECK_THROWS_AS(gamma_eval(gamma, 2.1), ConfigError);
}

TEST_CASE("table gamma interpolates and validates monotonicity") {
  const GammaSpec gamma = GammaSpec::monotone_table({{0.0, 1.0}, {1.0, 0.8}, {2.0, 0.0}});
  CHECK(gamma_eval(gamma, 0.5) == doctest::Approx(0.9));
  CHECK(gamma_eval(gamma, 1.5) == doctest::Approx(0.4));
  CHECK(gamma_eval(gamma, -1.0) == doctest::Approx(1.0));  // clamped
  CHECK(gamma_eval(gamma, 3.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(GammaSpec::monotone_table({{0.0, 0.5}, {1.0, 0.8}}), ConfigError);
  CHECK_THROWS_AS(GammaSpec::monotone_table({{0.0, 1.5}, {1.0, 0.0}}), ConfigError);
}

TEST_CASE("replicator increment formula") {
  const DynamicsConfig config = DynamicsConfig::plain(0.1, GammaSpec::affine(2.0));
  RoundRecord round;
  round.strategies = {0, 0};
  round.updater = 0;

  // gamma(r) = 0.5 at cost 1: delta = 0.1 * 0.5 * (e_1 - q).
  round.realized_cost = 1.0;
  const std::vector<double> qi = {0.5, 0.5};
  const auto delta = replicator_increment(round, qi, config);
  CHECK(delta[0] == doctest::Approx(0.025));
  CHECK(delta[1] == doctest::Approx(-0.025));

  // Worst cost: gamma = 0, no movement.
  round.realized_cost = 2.0;
  for (double d : replicator_increment(round, qi, config)) CHECK(d == doctest::Approx(0.0));

  // Already at the sampled corner: e_s - q = 0.
  round.realized_cost = 0.3;
  const std::vector<double> corner = {1.0, 0.0};
  for (double d : replicator_increment(round, corner, config)) {
    CHECK(d == doctest::Approx(0.0));
  }
}

TEST_CASE("perturbed increment carries b^2 on the uniform branch") {
  DynamicsConfig config = DynamicsConfig::perturbed(0.1, 0.5, GammaSpec::affine(2.0));
  RoundRecord round;
  round.strategies = {0, 0};
  round.updater = 0;
  round.realized_cost = 1.0;

  round.replicator_branch = false;
  round.uniform_pull = 1;
  const std::vector<double> corner = {1.0, 0.0};
  const auto pull = perturbed_increment(round, corner, config);
  CHECK(pull[0] == doctest::Approx(-0.01));
  CHECK(pull[1] == doctest::Approx(0.01));

  const std::vector<double> mixed = {0.5, 0.5};
  round.uniform_pull = 0;
  const auto pull2 = perturbed_increment(round, mixed, config);
  CHECK(pull2[0] == doctest::Approx(0.005));
  CHECK(pull2[1] == doctest::Approx(-0.005));

  // alpha = 1 never takes the uniform branch: identical to the replicator.
  round.replicator_branch = true;
  const auto rep = perturbed_increment(round, mixed, config);
  const auto rep_ref = replicator_increment(round, mixed, config);
  CHECK(rep[0] == doctest::Approx(rep_ref[0]));
  CHECK(rep[1] == doctest::Approx(rep_ref[1]));
}

TEST_CASE("monotone gamma coupling: larger cost moves less toward the corner") {
  const DynamicsConfig config = DynamicsConfig::plain(0.1, GammaSpec::affine(2.0));
  RoundRecord round;
  round.strategies = {0, 0};
  round.updater = 0;
  const std::vector<double> qi = {0.4, 0.6};
  round.realized_cost = 0.5;
  const auto fast = replicator_increment(round, qi, config);
  round.realized_cost = 1.5;
  const auto slow = replicator_increment(round, qi, config);
  CHECK(fast[0] > slow[0]);        // toward e_1
  CHECK(fast[1] < slow[1]);        // away from strategy 2
  CHECK(slow[0] > 0.0);
}

TEST_CASE("sample_round degenerate draws") {
  const CongestionGame lb2 = make_lb2();
  DynamicsConfig config = DynamicsConfig::plain(0.1, GammaSpec::affine(2.0));

  // Corner Q: the sampled profile is deterministic.
  LearnerState corner(MixedProfile::pure(lb2.strategy_counts(), {1, 0}), 1ULL);
  for (int k = 0; k < 20; ++k) {
    const RoundRecord round = sample_round(corner, lb2, config);
    CHECK(round.strategies == PureProfile{1, 0});
  }

  // p = e_1 always selects player 1.
  config.player_select = {1.0, 0.0};
  LearnerState state(MixedProfile::uniform(lb2.strategy_counts()), 2ULL);
  for (int k = 0; k < 20; ++k) {
    CHECK(sample_round(state, lb2, config).updater == 0);
  }
}

TEST_CASE("sample_round frequencies match the product distribution") {
  const CongestionGame lb2 = make_lb2();
  const DynamicsConfig config = DynamicsConfig::plain(0.1, GammaSpec::affine(2.0));
  LearnerState state(MixedProfile::uniform(lb2.strategy_counts()), 31337ULL);
  const int n = 100000;
  int count = 0;
  for (int k = 0; k < n; ++k) {
    const RoundRecord round = sample_round(state, lb2, config);
    if (round.strategies[0] == 0 && round.strategies[1] == 0) ++count;
  }
  const double freq = static_cast<double>(count) / n;
  const double sigma = std::sqrt(0.25 * 0.75 / n);
  CHECK(std::abs(freq - 0.25) < 3.0 * sigma);
}

TEST_CASE("step updates exactly one player and preserves the simplex") {
  const CongestionGame lb2 = make_lb2();
  const DynamicsConfig config = DynamicsConfig::perturbed(0.07, 0.8, GammaSpec::affine(2.0));
  LearnerState state(MixedProfile({{0.6, 0.4}, {0.3, 0.7}}), 9ULL);
  for (int k = 0; k < 20000; ++k) {
    const MixedProfile before = state.q;
    step(state, lb2, config);
    int changed = 0;
    for (int i = 0; i < 2; ++i) {
      if (state.q.block(i) != before.block(i)) ++changed;
    }
    CHECK(changed <= 1);  // elementary stepwise
    REQUIRE(state.q.simplex_valid(1e-9));
  }
  CHECK(state.t == 20000);
}

TEST_CASE("fixed seed replays bit-identical trajectories") {
  const CongestionGame lb2 = make_lb2();
  const DynamicsConfig config = DynamicsConfig::perturbed(0.05, 0.9, GammaSpec::affine(2.0));
  LearnerState a(MixedProfile::uniform(lb2.strategy_counts()), 271828ULL);
  LearnerState b(MixedProfile::uniform(lb2.strategy_counts()), 271828ULL);
  Trajectory ta = run(a, lb2, config, 5000, 1);
  Trajectory tb = run(b, lb2, config, 5000, 1);
  REQUIRE(ta.samples.size() == tb.samples.size());
  for (std::size_t k = 0; k < ta.samples.size(); ++k) {
    CHECK(ta.samples[k].q == tb.samples[k].q);  // exact bitwise state equality
  }
}

TEST_CASE("run record counts and stride") {
  const CongestionGame lb2 = make_lb2();
  const DynamicsConfig config = DynamicsConfig::plain(0.1, GammaSpec::affine(2.0));

  LearnerState zero(MixedProfile::uniform(lb2.strategy_counts()), 1ULL);
  CHECK(run(zero, lb2, config, 0, 1).samples.size() == 1);

  LearnerState strided(MixedProfile::uniform(lb2.strategy_counts()), 1ULL);
  CHECK(run(strided, lb2, config, 100, 10).samples.size() == 11);

  LearnerState tail(MixedProfile::uniform(lb2.strategy_counts()), 1ULL);
  const Trajectory t = run(tail, lb2, config, 105, 10);
  CHECK(t.samples.size() == 12);  // multiples of 10 plus the final step
  CHECK(t.samples.back().step == 105);
}

TEST_CASE("long runs drift toward a pure Nash corner from a symmetric start") {
  const CongestionGame lb2 = make_lb2();
  const DynamicsConfig config = DynamicsConfig::plain(0.01, GammaSpec::affine(2.0));
  const std::vector<PureProfile> nash = {{0, 1}, {1, 0}};
  int near = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    LearnerState state(MixedProfile({{0.9, 0.1}, {0.9, 0.1}}),
                       Rng::for_trial(777ULL, static_cast<std::uint64_t>(trial)));
    for (int k = 0; k < 100000; ++k) step(state, lb2, config);
    for (const auto& corner : nash) {
      if (state.q.l_inf_distance(MixedProfile::pure(lb2.strategy_counts(), corner)) < 0.05) {
        ++near;
        break;
      }
    }
  }
  CHECK(near >= static_cast<int>(0.95 * trials));
}

TEST_CASE("property: random games keep every dynamics invariant") {
  // Random 2-3 player games, random parameters: simplex validity, the
  // elementary-stepwise property, and replay determinism all hold.
  Rng maker(190);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + maker.next_index(2);
    std::vector<int> counts(static_cast<std::size_t>(n));
    for (int& m : counts) m = 2 + maker.next_index(2);
    const std::size_t cells = profile_count(counts);
    std::vector<std::vector<double>> tables(static_cast<std::size_t>(n));
    for (auto& table : tables) {
      table.resize(cells);
      for (double& c : table) c = maker.next_double();
    }
    const NormalFormGame game(counts, std::move(tables), 1.0,
                              trial % 3 == 0 ? 0.05 : 0.0);
    const DynamicsConfig config =
        trial % 2 ? DynamicsConfig::perturbed(0.01 + 0.3 * maker.next_double(),
                                              0.2 + 0.7 * maker.next_double(),
                                              GammaSpec::affine(1.0))
                  : DynamicsConfig::plain(0.01 + 0.3 * maker.next_double(),
                                          GammaSpec::affine(1.0));

    const std::uint64_t seed = maker.next_u64();
    LearnerState state(MixedProfile::uniform(counts), seed);
    LearnerState replay(MixedProfile::uniform(counts), seed);
    for (int k = 0; k < 2000; ++k) {
      const MixedProfile before = state.q;
      step(state, game, config);
      int changed = 0;
      for (int i = 0; i < n; ++i) {
        if (state.q.block(i) != before.block(i)) ++changed;
      }
      REQUIRE(changed <= 1);
      REQUIRE(state.q.simplex_valid(1e-9));
      step(replay, game, config);
    }
    REQUIRE(replay.q == state.q);
  }
}

TEST_CASE("weighted congestion games simulate fine without a Rosenthal potential") {
  const CongestionGame weighted = CongestionGame::load_balancing(
      3, 2, {{0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, 1.0, 2.0, 3.0, 4.0}}, 4.0, {1, 1, 2});
  const DynamicsConfig config = DynamicsConfig::plain(0.02, GammaSpec::affine(4.0));
  LearnerState state(MixedProfile::uniform(weighted.strategy_counts()), 64ULL);
  for (int k = 0; k < 20000; ++k) step(state, weighted, config);
  CHECK(state.q.simplex_valid(1e-9));
  // Enumeration-based analysis still works; the exact potential does not.
  CHECK(!enumerate_pure_nash(weighted).empty());
  CHECK_THROWS_AS(rosenthal_potential(weighted, {0, 0, 0}), WeightedGameError);
}

TEST_CASE("config validation") {
  const CongestionGame lb2 = make_lb2();
  DynamicsConfig config = DynamicsConfig::plain(0.1, GammaSpec::affine(2.0));
  CHECK_NOTHROW(config.validate(lb2));

  config.b = 0.0;
  CHECK_THROWS_AS(config.validate(lb2), ConfigError);
  config.b = 0.1;
  config.player_select = {0.5, 0.4};
  CHECK_THROWS_AS(config.validate(lb2), ConfigError);
  config.player_select = {0.5, 0.5};
  config.gamma = GammaSpec::affine(1.0);  // below the game's cost bound
  CHECK_THROWS_AS(config.validate(lb2), ConfigError);
}
