#include <doctest.h>

#include <cmath>

#include "replidyn/bundled_games.hpp"
#include "replidyn/oracle.hpp"

using namespace replidyn;

namespace {

DynamicsConfig plain_lb2(double b) { return DynamicsConfig::plain(b, GammaSpec::affine(2.0)); }

DynamicsConfig perturbed_lb2(double b, double alpha) {
  return DynamicsConfig::perturbed(b, alpha, GammaSpec::affine(2.0));
}

}  // namespace

TEST_CASE("expected update vanishes at corners in plain mode") {
  const CongestionGame lb2 = make_lb2();
  const MixedProfile corner = MixedProfile::pure(lb2.strategy_counts(), {0, 0});
  const Tangent mean = exact_expected_update(lb2, corner, plain_lb2(0.1));
  CHECK(tangent_max_norm(mean) == doctest::Approx(0.0));

  // The uniform-pull branch still moves mass off the corner.
  const Tangent kicked = exact_expected_update(lb2, corner, perturbed_lb2(0.1, 0.5));
  CHECK(tangent_max_norm(kicked) > 0.0);
}

TEST_CASE("expected update is zero at the LB2 uniform equilibrium") {
  const CongestionGame lb2 = make_lb2();
  const MixedProfile uniform = MixedProfile::uniform(lb2.strategy_counts());
  CHECK(tangent_max_norm(exact_expected_update(lb2, uniform, plain_lb2(0.1))) <= 1e-15);
  // Uniform pulls target the uniform vector, so perturbed mode is zero too.
  CHECK(tangent_max_norm(exact_expected_update(lb2, uniform, perturbed_lb2(0.1, 0.6))) <= 1e-15);
}

TEST_CASE("expected update matches the empirical step mean within 4 sigma") {
  Rng maker(5150);
  std::vector<std::vector<double>> tables(2, std::vector<double>(4));
  for (auto& table : tables) {
    for (double& c : table) c = maker.next_double();
  }
  const NormalFormGame game({2, 2}, std::move(tables), 1.0);
  const DynamicsConfig config = DynamicsConfig::perturbed(0.1, 0.8, GammaSpec::affine(1.0));
  const MixedProfile q0(std::vector<std::vector<double>>{{0.35, 0.65}, {0.6, 0.4}});
  const Tangent mean = exact_expected_update(game, q0, config);

  const int rounds = 1000000;
  Tangent empirical(2, std::vector<double>(2, 0.0));
  Tangent sumsq(2, std::vector<double>(2, 0.0));
  LearnerState state(q0, 8086ULL);
  for (int k = 0; k < rounds; ++k) {
    state.q = q0;  // one-step samples from the fixed profile
    step(state, game, config);
    for (int i = 0; i < 2; ++i) {
      for (int l = 0; l < 2; ++l) {
        const double d = state.q.at(i, l) - q0.at(i, l);
        empirical[i][l] += d;
        sumsq[i][l] += d * d;
      }
    }
  }
  for (int i = 0; i < 2; ++i) {
    for (int l = 0; l < 2; ++l) {
      const double avg = empirical[i][l] / rounds;
      const double var = sumsq[i][l] / rounds - avg * avg;
      const double se = std::sqrt(std::max(var, 1e-30) / rounds);
      CHECK(std::abs(avg - mean[i][l]) < 4.0 * se + 1e-12);
    }
  }
}

TEST_CASE("expected update factorizes as b * p_i * E[F_i | Q]") {
  // Dual route: E[F_i] enumerated over profiles only (no player selection),
  // then scaled by b p_i, must equal the full round enumeration.
  const CongestionGame lb2 = make_lb2();
  const MixedProfile q(std::vector<std::vector<double>>{{0.3, 0.7}, {0.6, 0.4}});
  DynamicsConfig config = plain_lb2(0.08);
  config.player_select = {0.25, 0.75};
  const Tangent mean = exact_expected_update(lb2, q, config);

  for (int i = 0; i < 2; ++i) {
    std::vector<double> f_mean(2, 0.0);
    for_each_profile(lb2.strategy_counts(), [&](const PureProfile& s) {
      const double pi_s = profile_probability(q, s);
      const double g = gamma_eval(config.gamma, lb2.pure_cost(i, s));
      for (int l = 0; l < 2; ++l) {
        f_mean[l] += pi_s * g * ((s[i] == l ? 1.0 : 0.0) - q.at(i, l));
      }
    });
    for (int l = 0; l < 2; ++l) {
      CHECK(mean[i][l] ==
            doctest::Approx(config.b * config.player_select[i] * f_mean[l]).epsilon(1e-14));
    }
  }
}

TEST_CASE("one-step drift report on the frozen LB2 example") {
  const CongestionGame lb2 = make_lb2();
  const ExpectedPotential potential(lb2, PotentialSpec::rosenthal());
  const MixedProfile q(std::vector<std::vector<double>>{{1.0, 0.0}, {0.5, 0.5}});
  const DriftReport report = exact_one_step_drift(lb2, potential, q, plain_lb2(0.1));
  CHECK(report.exact_dF == doctest::Approx(-6.25e-3).epsilon(1e-12));
  CHECK(report.multiaffine_identity_ok);
  CHECK(report.identity_gap <= 1e-15);
  // Plain mode with affine gamma: the closed form is exact, not just O(b^2).
  CHECK(report.order_gap <= 1e-15);
  CHECK(report.prob_total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.uniform_part == doctest::Approx(0.0));
}

TEST_CASE("at a Nash profile the drift is O(b^2) only") {
  const CongestionGame lb2 = make_lb2();
  const ExpectedPotential potential(lb2, PotentialSpec::rosenthal());
  const MixedProfile corner = MixedProfile::pure(lb2.strategy_counts(), {0, 1});
  const DriftReport plain = exact_one_step_drift(lb2, potential, corner, plain_lb2(0.1));
  CHECK(plain.exact_dF == doctest::Approx(0.0));

  const DriftReport kicked0 = exact_one_step_drift(lb2, potential, corner,
                                                   perturbed_lb2(0.1, 0.5));
  const DriftReport kicked1 = exact_one_step_drift(lb2, potential, corner,
                                                   perturbed_lb2(0.05, 0.5));
  CHECK(kicked0.formula_dF == doctest::Approx(0.0));  // leading term vanishes
  CHECK(kicked0.exact_dF != doctest::Approx(0.0));
  // Pure b^2 scaling of the remainder.
  CHECK(kicked0.exact_dF / kicked1.exact_dF == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("a non-multiaffine function breaks the gradient identity and is flagged") {
  const CongestionGame lb2 = make_lb2();
  const ExpectedPotential base(lb2, PotentialSpec::rosenthal());
  // Add a within-player cross term q_{1,1} q_{1,2}: multiaffine no more.
  LyapunovFn broken = base.as_lyapunov();
  broken.multiaffine = false;
  broken.value = [&base](const MixedProfile& q) {
    return base.value(q) + q.at(0, 0) * q.at(0, 1);
  };
  broken.pinned_all = [&base](const MixedProfile& q) {
    auto pinned = base.pinned_all(q);
    // d/dq_{1,1} of the cross term is q_{1,2} and vice versa.
    pinned[0][0] += q.at(0, 1);
    pinned[0][1] += q.at(0, 0);
    return pinned;
  };
  const MixedProfile q(std::vector<std::vector<double>>{{0.6, 0.4}, {0.3, 0.7}});
  const DriftReport report = exact_one_step_drift(lb2, broken, q, plain_lb2(0.1));
  CHECK(!report.multiaffine_identity_ok);
  CHECK(report.identity_gap > 1e-6);
}

TEST_CASE("drift identity holds exactly across random games and modes") {
  Rng rng(271);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<int> counts = {2 + rng.next_index(2), 2 + rng.next_index(2)};
    const std::size_t cells = profile_count(counts);
    std::vector<std::vector<double>> tables(2);
    for (auto& table : tables) {
      table.resize(cells);
      for (double& c : table) c = rng.next_double();
    }
    const NormalFormGame game(counts, std::move(tables), 1.0);
    std::vector<double> phi(cells);
    for (double& v : phi) v = rng.next_double();
    const ExpectedPotential potential(game, PotentialSpec::table(phi));
    const MixedProfile q = random_interior_profile(counts, rng);
    const DynamicsConfig config =
        trial % 2 ? DynamicsConfig::perturbed(0.05 + 0.1 * rng.next_double(),
                                              0.1 + 0.8 * rng.next_double(),
                                              GammaSpec::affine(1.0))
                  : DynamicsConfig::plain(0.05 + 0.1 * rng.next_double(),
                                          GammaSpec::affine(1.0));
    const DriftReport report = exact_one_step_drift(game, potential, q, config);
    REQUIRE(report.identity_gap <= 1e-12);
    REQUIRE(std::abs(report.prob_total - 1.0) <= 1e-12);
  }
}

TEST_CASE("exact oracles refuse sampler-noise games") {
  const NormalFormGame noisy({2, 2}, {{0.5, 0.6, 0.7, 0.8}, {0.5, 0.6, 0.7, 0.8}}, 1.0, 0.2);
  CHECK_THROWS_AS(exact_expected_update(noisy, MixedProfile::uniform(noisy.strategy_counts()),
                                        DynamicsConfig::plain(0.1, GammaSpec::affine(1.0))),
                  ExactOracleError);
}

TEST_CASE("hitting time is zero when the start is already eps-Nash") {
  const CongestionGame lb2 = make_lb2();
  const ExpectedPotential potential(lb2, PotentialSpec::rosenthal());
  const MixedProfile nash = MixedProfile::pure(lb2.strategy_counts(), {0, 1});
  const HittingTimeResult hits = hitting_time_trials(
      lb2, potential, nash, 0.1, perturbed_lb2(0.025, 0.9), 50, 1000ULL, 5ULL, 2);
  CHECK(hits.mean_tau == doctest::Approx(0.0));
  CHECK(hits.censored == 0);
}

TEST_CASE("hitting is censoring-free for eps >= 0.1 on LB2") {
  const CongestionGame lb2 = make_lb2();
  const ExpectedPotential potential(lb2, PotentialSpec::rosenthal());
  const MixedProfile q0(std::vector<std::vector<double>>{{0.999, 0.001}, {0.999, 0.001}});
  const HittingTimeResult hits = hitting_time_trials(
      lb2, potential, q0, 0.1, perturbed_lb2(0.025, 0.98), 200, 1000000ULL, 44ULL, 2);
  CHECK(hits.censored == 0);
  CHECK(hits.ci_lo <= hits.mean_tau);
  CHECK(hits.mean_tau <= hits.ci_hi);
}

TEST_CASE("level escape: lambda = 1 bound is vacuous and never violated") {
  const CongestionGame lb2 = make_lb2();
  const ExpectedPotential potential(lb2, PotentialSpec::rosenthal());
  const MixedProfile q0(std::vector<std::vector<double>>{{0.95, 0.05}, {0.05, 0.95}});
  const EscapeResult escape = level_escape_probability(lb2, potential, q0, 1.0,
                                                       plain_lb2(0.01), 100, 2000ULL, 3ULL,
                                                       50, 2);
  CHECK(escape.bound == doctest::Approx(1.0));
  CHECK(escape.fraction <= escape.bound + escape.margin3);
}

TEST_CASE("escape precondition fails when the drift is positive above the level") {
  // Matching-pennies has no potential: treat an arbitrary table as F and the
  // drift is positive somewhere above the start level.
  const NormalFormGame pennies({2, 2}, {{1.0, 0.0, 0.0, 1.0}, {0.0, 1.0, 1.0, 0.0}}, 1.0);
  const ExpectedPotential fake(pennies, PotentialSpec::table({0.9, 0.1, 0.2, 0.8}));
  const MixedProfile q0(std::vector<std::vector<double>>{{0.55, 0.45}, {0.45, 0.55}});
  CHECK_THROWS_AS(
      level_escape_probability(pennies, fake, q0, 2.0,
                               DynamicsConfig::plain(0.05, GammaSpec::affine(1.0)), 10,
                               100ULL, 7ULL, 400, 1),
      DriftPreconditionError);
}

TEST_CASE("ode deviation is zero at T = 0 and for the stationary start") {
  const CongestionGame lb2 = make_lb2();
  const auto rows = ode_deviation(lb2, MixedProfile::uniform(lb2.strategy_counts()),
                                  {0.02}, 0.0, 5, 3ULL, plain_lb2(0.02), 0.005, false, 1);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].mean_sup_dev == doctest::Approx(0.0));
}

TEST_CASE("mean-dynamics deviation scales like O(b)") {
  // Replacing sampling by the exact one-step expectation leaves the pure
  // Euler discretization bias, whose sup-norm is O(b): log-log slope near 1.
  const CongestionGame lb2 = make_lb2();
  const MixedProfile q0(std::vector<std::vector<double>>{{0.9, 0.1}, {0.8, 0.2}});
  const auto rows = ode_deviation(lb2, q0, {0.08, 0.04, 0.02, 0.01}, 5.0, 1, 3ULL,
                                  plain_lb2(0.01), 0.001, /*mean_dynamics=*/true, 1);
  std::vector<std::pair<double, double>> points;
  for (const auto& row : rows) points.emplace_back(row.b, row.mean_sup_dev);
  const double slope = fit_loglog_slope(points);
  CHECK(slope > 0.5);
  CHECK(slope < 1.5);
}

TEST_CASE("kappa measurement finds a positive worst-case decrease") {
  const CongestionGame lb2 = make_lb2();
  const ExpectedPotential potential(lb2, PotentialSpec::rosenthal());
  const KappaEstimate kappa = measure_drift_kappa(lb2, potential, perturbed_lb2(0.05, 0.98),
                                                  0.2, 300, 21ULL, 0.05);
  CHECK(kappa.usable > 0);
  CHECK(kappa.kappa > 0.0);
}
