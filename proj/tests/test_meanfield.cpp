#include <doctest.h>

#include <cmath>

#include "replidyn/bundled_games.hpp"
#include "replidyn/meanfield.hpp"

using namespace replidyn;

namespace {
const std::vector<double> kHalf = {0.5, 0.5};
}

TEST_CASE("replicator rhs vanishes at corners and at the LB2 mixed equilibrium") {
  const CongestionGame lb2 = make_lb2();
  for_each_profile(lb2.strategy_counts(), [&](const PureProfile& s) {
    const MixedProfile corner = MixedProfile::pure(lb2.strategy_counts(), s);
    CHECK(tangent_max_norm(replicator_rhs(lb2, corner, kHalf)) == doctest::Approx(0.0));
  });
  const MixedProfile uniform = MixedProfile::uniform(lb2.strategy_counts());
  CHECK(tangent_max_norm(replicator_rhs(lb2, uniform, kHalf)) <= 1e-12);
}

TEST_CASE("replicator rhs matches the hand-computed LB2 value") {
  const CongestionGame lb2 = make_lb2();
  const MixedProfile q(std::vector<std::vector<double>>{{1.0, 0.0}, {0.5, 0.5}});
  const Tangent t = replicator_rhs(lb2, q, kHalf, /*gamma_scaled=*/true);
  // Player 2: pinned costs 2 and 1, mixed 1.5, scale 1/M = 0.5.
  CHECK(t[1][0] == doctest::Approx(-0.0625));
  CHECK(t[1][1] == doctest::Approx(0.0625));
  CHECK(t[0][0] == doctest::Approx(0.0));

  // Unscaled drops the 1/M factor.
  const Tangent u = replicator_rhs(lb2, q, kHalf, /*gamma_scaled=*/false);
  CHECK(u[1][0] == doctest::Approx(-0.125));
}

TEST_CASE("support equalization implies stationarity") {
  const CongestionGame lb2 = make_lb2();
  // Both players' supports see equal costs at the uniform profile, for any
  // selection distribution.
  const MixedProfile q(std::vector<std::vector<double>>{{0.5, 0.5}, {0.5, 0.5}});
  CHECK(tangent_max_norm(replicator_rhs(lb2, q, {0.3, 0.7})) <= 1e-12);

  // Singleton support is trivially equalized: that block stays put even when
  // the other player's block moves.
  const MixedProfile pinned(std::vector<std::vector<double>>{{1.0, 0.0}, {0.3, 0.7}});
  const Tangent t = replicator_rhs(lb2, pinned, kHalf);
  CHECK(std::abs(t[0][0]) <= 1e-15);
  CHECK(std::abs(t[0][1]) <= 1e-15);
  CHECK(std::abs(t[1][0]) > 1e-3);
}

TEST_CASE("every field evaluation is tangent") {
  const CongestionGame game = make_congestion3();
  const std::vector<double> p = {0.2, 0.5, 0.3};
  Rng rng(21);
  for (int k = 0; k < 50; ++k) {
    const Tangent t = replicator_rhs(game, random_interior_profile(game.strategy_counts(), rng),
                                     p);
    for (const auto& block : t) {
      double sum = 0.0;
      for (double v : block) sum += v;
      CHECK(std::abs(sum) <= 1e-12);
    }
  }
}

TEST_CASE("rk4 step is exact on a zero field and at stationary points") {
  const CongestionGame lb2 = make_lb2();
  const VectorField zero([](const MixedProfile& q) {
    Tangent t(static_cast<std::size_t>(q.players()));
    for (int i = 0; i < q.players(); ++i) t[i].assign(q.block(i).size(), 0.0);
    return t;
  });
  const MixedProfile q(std::vector<std::vector<double>>{{0.3, 0.7}, {0.8, 0.2}});
  CHECK(rk4_step(zero, q, 0.1) == q);

  const VectorField field = replicator_field(lb2, kHalf);
  const MixedProfile corner = MixedProfile::pure(lb2.strategy_counts(), {0, 1});
  CHECK(rk4_step(field, corner, 0.1).l_inf_distance(corner) <= 1e-15);
}

TEST_CASE("rk4 self-convergence is fourth order") {
  const CongestionGame lb2 = make_lb2();
  const VectorField field = replicator_field(lb2, kHalf);
  const MixedProfile q0(std::vector<std::vector<double>>{{0.9, 0.1}, {0.8, 0.2}});
  const double T = 5.0;
  const auto endpoint = [&](double h) {
    return integrate(field, q0, T, h, 1000000).states.back();
  };
  const MixedProfile ref = endpoint(0.05);
  const double e1 = endpoint(0.2).l_inf_distance(ref);
  const double e2 = endpoint(0.1).l_inf_distance(ref);
  // Against the h/4 reference the expected ratio is 255/15 = 17.
  CHECK(e1 / e2 > 10.0);
  CHECK(e1 / e2 < 26.0);
}

TEST_CASE("integrate handles T = 0 and reports residuals") {
  const CongestionGame lb2 = make_lb2();
  const VectorField field = replicator_field(lb2, kHalf);
  const MixedProfile q0 = MixedProfile::uniform(lb2.strategy_counts());
  const OdeSolution sol = integrate(field, q0, 0.0, 0.01);
  CHECK(sol.states.size() == 1);
  CHECK(sol.final_residual <= 1e-12);
}

TEST_CASE("LB2 trajectory converges to the pure Nash corner from an asymmetric start") {
  const CongestionGame lb2 = make_lb2();
  const VectorField field = replicator_field(lb2, kHalf);
  const MixedProfile q0(std::vector<std::vector<double>>{{0.9, 0.1}, {0.8, 0.2}});
  const OdeSolution sol = integrate(field, q0, 200.0, 0.01, 100);
  CHECK(sol.final_residual < 1e-6);
  const MixedProfile corner = MixedProfile::pure(lb2.strategy_counts(), {0, 1});
  CHECK(sol.states.back().l_inf_distance(corner) < 1e-3);
}

TEST_CASE("classification of LB2 profiles") {
  const CongestionGame lb2 = make_lb2();
  const VectorField field = replicator_field(lb2, kHalf);

  const Classification nash = classify_point(
      field, lb2, MixedProfile::pure(lb2.strategy_counts(), {0, 1}));
  CHECK(nash.stationary);
  CHECK(nash.nash);
  CHECK(!nash.stationary_non_nash);

  const Classification corner = classify_point(
      field, lb2, MixedProfile::pure(lb2.strategy_counts(), {0, 0}));
  CHECK(corner.stationary);
  CHECK(!corner.nash);
  CHECK(corner.stationary_non_nash);

  const Classification uniform =
      classify_point(field, lb2, MixedProfile::uniform(lb2.strategy_counts()));
  CHECK(uniform.stationary);
  CHECK(uniform.nash);
}

TEST_CASE("Nash profiles have vanishing field norm") {
  const CongestionGame game = make_congestion3();
  const std::vector<double> p = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  const VectorField field = replicator_field(game, p);
  for (const auto& nash : enumerate_pure_nash(game)) {
    CHECK(tangent_max_norm(field(MixedProfile::pure(game.strategy_counts(), nash))) <= 1e-9);
  }
}

TEST_CASE("trajectories escape the stationary non-Nash corner") {
  const CongestionGame lb2 = make_lb2();
  const VectorField field = replicator_field(lb2, kHalf);
  const MixedProfile corner = MixedProfile::pure(lb2.strategy_counts(), {0, 0});
  const MixedProfile q0(std::vector<std::vector<double>>{{0.999, 0.001}, {0.999, 0.001}});
  const OdeSolution sol = integrate(field, q0, 80.0, 0.01, 20);
  double max_distance = 0.0;
  for (const auto& state : sol.states) {
    max_distance = std::max(max_distance, state.l_inf_distance(corner));
  }
  CHECK(max_distance > 0.1);
}

TEST_CASE("integrate validates arguments") {
  const CongestionGame lb2 = make_lb2();
  const VectorField field = replicator_field(lb2, kHalf);
  const MixedProfile q0 = MixedProfile::uniform(lb2.strategy_counts());
  CHECK_THROWS_AS(integrate(field, q0, -1.0, 0.01), ConfigError);
  CHECK_THROWS_AS(rk4_step(field, q0, 0.0), ConfigError);
}
