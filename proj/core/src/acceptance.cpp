#include "replidyn/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "replidyn/bundled_games.hpp"
#include "replidyn/csv.hpp"
#include "replidyn/harness.hpp"
#include "replidyn/oracle.hpp"

namespace replidyn {
namespace {

std::string fmt(double v) { return format_double17(v); }

DynamicsConfig plain_config(const Game& game, double b) {
  return DynamicsConfig::plain(b, GammaSpec::affine(game.cost_bound()));
}

DynamicsConfig perturbed_config(const Game& game, double b, double alpha) {
  return DynamicsConfig::perturbed(b, alpha, GammaSpec::affine(game.cost_bound()));
}

// 1. Exact enumerated E[dF] equals the gradient form within 1e-12 on random
//    small games, profiles, and update parameters.
CriterionResult criterion_drift_identity(const SuiteOptions& options) {
  CriterionResult result{1, "multiaffine drift identity (1e-12)", true, false, ""};
  const int tuples = options.quick ? 100 : 1000;
  Rng rng(20240811ULL);
  double worst_gap = 0.0;
  double worst_mass = 0.0;
  for (int k = 0; k < tuples; ++k) {
    const std::vector<int> counts = {2 + rng.next_index(2), 2 + rng.next_index(2)};
    const std::size_t cells = profile_count(counts);
    std::vector<std::vector<double>> tables(2);
    for (auto& table : tables) {
      table.resize(cells);
      for (double& c : table) c = rng.next_double();
    }
    const NormalFormGame game(counts, std::move(tables), /*cost_bound=*/1.0);
    std::vector<double> phi(cells);
    for (double& v : phi) v = rng.next_double();
    const ExpectedPotential potential(game, PotentialSpec::table(std::move(phi)));

    const MixedProfile q = random_interior_profile(counts, rng, 0.0);
    DynamicsConfig config = k % 2 == 0
                                ? plain_config(game, 0.01 + 0.19 * rng.next_double())
                                : perturbed_config(game, 0.01 + 0.19 * rng.next_double(),
                                                   0.05 + 0.9 * rng.next_double());
    std::vector<double> p = {rng.next_double(), 0.0};
    p[0] = 0.1 + 0.8 * p[0];
    p[1] = 1.0 - p[0];
    config.player_select = p;

    const DriftReport report = exact_one_step_drift(game, potential, q, config);
    worst_gap = std::max(worst_gap, report.identity_gap);
    worst_mass = std::max(worst_mass, std::abs(report.prob_total - 1.0));
  }
  result.pass = worst_gap <= 1e-12 && worst_mass <= 1e-12;
  result.detail = std::to_string(tuples) + " tuples, max identity gap " + fmt(worst_gap) +
                  ", max outcome-mass gap " + fmt(worst_mass);
  return result;
}

// 2. |exact_dF - formula_dF| = O(b^2): fitted log-log exponent >= 1.9 over
//    b = 0.1 * 2^-k, k = 0..5, at a fixed non-Nash LB2 profile.
CriterionResult criterion_drift_order(const SuiteOptions&) {
  CriterionResult result{2, "drift formula order O(b^2), exponent >= 1.9", true, false, ""};
  const CongestionGame lb2 = make_lb2();
  const ExpectedPotential potential(lb2, PotentialSpec::rosenthal());
  const MixedProfile q(std::vector<std::vector<double>>{{0.7, 0.3}, {0.4, 0.6}});

  std::vector<std::pair<double, double>> gaps;
  for (int k = 0; k <= 5; ++k) {
    const double b = 0.1 * std::pow(2.0, -k);
    const DynamicsConfig config = perturbed_config(lb2, b, 0.75);
    const DriftReport report = exact_one_step_drift(lb2, potential, q, config);
    gaps.emplace_back(b, report.order_gap);
  }
  const double slope = fit_loglog_slope(gaps);
  result.pass = !std::isnan(slope) && slope >= 1.9;
  result.detail = "fitted exponent " + fmt(slope) + ", gap at b=0.1: " + fmt(gaps[0].second);
  return result;
}

// 3. Folk theorem on LB2: pure Nash and the uniform mixed equilibrium are
//    stationary, corner (1,1) is stationary-non-Nash, and the ODE escapes it.
CriterionResult criterion_folk_theorem(const SuiteOptions&) {
  CriterionResult result{3, "folk theorem: Nash stationarity + unstable non-Nash corner", true,
                         false, ""};
  const CongestionGame lb2 = make_lb2();
  const std::vector<double> p = {0.5, 0.5};
  const VectorField field = replicator_field(lb2, p, true);

  std::ostringstream detail;
  double worst_norm = 0.0;
  for (const auto& nash : enumerate_pure_nash(lb2)) {
    const MixedProfile corner = MixedProfile::pure(lb2.strategy_counts(), nash);
    worst_norm = std::max(worst_norm, tangent_max_norm(field(corner)));
  }
  const MixedProfile uniform = MixedProfile::uniform(lb2.strategy_counts());
  worst_norm = std::max(worst_norm, tangent_max_norm(field(uniform)));
  if (worst_norm > 1e-9) result.pass = false;
  detail << "max |rhs| at equilibria " << fmt(worst_norm);

  const MixedProfile bad_corner(std::vector<std::vector<double>>{{1.0, 0.0}, {1.0, 0.0}});
  const Classification c = classify_point(field, lb2, bad_corner);
  if (!(c.stationary && !c.nash && c.stationary_non_nash)) result.pass = false;
  detail << "; corner(1,1) stationary_non_nash=" << (c.stationary_non_nash ? "true" : "false");

  const double nudge = 1e-3;
  const MixedProfile q0(std::vector<std::vector<double>>{{1.0 - nudge, nudge},
                                                         {1.0 - nudge, nudge}});
  const OdeSolution sol = integrate(field, q0, 80.0, 0.01, 10);
  double max_distance = 0.0;
  for (const auto& state : sol.states) {
    max_distance = std::max(max_distance, state.l_inf_distance(bad_corner));
  }
  if (max_distance <= 0.1) result.pass = false;
  detail << "; escape distance " << fmt(max_distance);

  result.detail = detail.str();
  return result;
}

struct DescentFixture {
  std::string name;
  const Game& game;
  PotentialSpec phi;
  MixedProfile q0;
  double t_max;
};

// 4. F strictly decreases along the integrated ODE until the residual drops
//    below 1e-6 (per-step slack 1e-9) on every bundled potential fixture.
CriterionResult criterion_lyapunov_descent(const SuiteOptions&) {
  CriterionResult result{4, "Lyapunov descent along the mean-field ODE", true, false, ""};
  const CongestionGame lb2 = make_lb2();
  const CongestionGame congestion3 = make_congestion3();
  const TaskAllocationGame taskalloc4 = make_taskalloc4();
  const NormalFormGame normform23 = make_normform23();

  const std::vector<DescentFixture> fixtures = {
      {"lb2", lb2, PotentialSpec::rosenthal(),
       MixedProfile(std::vector<std::vector<double>>{{0.9, 0.1}, {0.8, 0.2}}), 400.0},
      {"congestion3", congestion3, PotentialSpec::rosenthal(),
       MixedProfile(std::vector<std::vector<double>>{{0.7, 0.3}, {0.45, 0.55}, {0.5, 0.3, 0.2}}),
       800.0},
      {"taskalloc4", taskalloc4, PotentialSpec::lex_task_allocation(),
       MixedProfile(std::vector<std::vector<double>>{
           {0.6, 0.4}, {0.7, 0.3}, {0.45, 0.55}, {0.3, 0.7}}),
       3000.0},
      {"normform23", normform23, normform23_potential(),
       MixedProfile(std::vector<std::vector<double>>{{0.6, 0.4}, {0.3, 0.4, 0.3}}), 800.0},
  };

  std::ostringstream detail;
  for (const auto& fixture : fixtures) {
    const std::vector<double> p(static_cast<std::size_t>(fixture.game.players()),
                                1.0 / fixture.game.players());
    const VectorField field = replicator_field(fixture.game, p, true);
    const ExpectedPotential potential(fixture.game, fixture.phi);
    const OdeSolution sol = integrate(field, fixture.q0, fixture.t_max, 0.01, 1, 1e-6);

    bool monotone = true;
    double previous = potential.value(sol.states.front());
    double worst_rise = 0.0;
    for (std::size_t k = 1; k < sol.states.size(); ++k) {
      const double value = potential.value(sol.states[k]);
      worst_rise = std::max(worst_rise, value - previous);
      if (value > previous + 1e-9) monotone = false;
      previous = value;
    }
    const bool converged = sol.final_residual < 1e-6;
    if (!monotone || !converged) result.pass = false;
    detail << fixture.name << "(residual " << fmt(sol.final_residual) << ", max rise "
           << fmt(worst_rise) << ") ";
  }
  result.detail = detail.str();
  return result;
}

// 5. Mean sup-deviation from the ODE reference strictly decreases over
//    b in {0.04, 0.02, 0.01} (LB2, T = 5 rescaled).
CriterionResult criterion_meanfield_ordering(const SuiteOptions& options) {
  CriterionResult result{5, "mean-field deviation decreasing in b", true, options.quick, ""};
  const CongestionGame lb2 = make_lb2();
  const MixedProfile q0(std::vector<std::vector<double>>{{0.9, 0.1}, {0.8, 0.2}});
  const int trials = options.quick ? 40 : 200;
  const auto rows = ode_deviation(lb2, q0, {0.04, 0.02, 0.01}, 5.0, trials, 73214ULL,
                                  plain_config(lb2, 0.01), 0.005, false, options.threads);
  std::ostringstream detail;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (k > 0 && !(rows[k].mean_sup_dev < rows[k - 1].mean_sup_dev)) result.pass = false;
    detail << "b=" << fmt(rows[k].b) << " dev=" << fmt(rows[k].mean_sup_dev) << " (se "
           << fmt(rows[k].std_err) << ") ";
  }
  result.detail = detail.str();
  return result;
}

// 6. Hitting-time scaling and the Z0/kappa bound on LB2 with b = eps/4.
CriterionResult criterion_hitting_time(const SuiteOptions& options) {
  CriterionResult result{6, "hitting time ~ 1/eps and E[tau] <= Z0/kappa", true, options.quick,
                         ""};
  const CongestionGame lb2 = make_lb2();
  const ExpectedPotential potential(lb2, PotentialSpec::rosenthal());
  const MixedProfile q0(std::vector<std::vector<double>>{{0.999, 0.001}, {0.999, 0.001}});
  const int trials = options.quick ? 100 : 1000;
  const std::vector<double> eps_list = {0.4, 0.2, 0.1};

  std::vector<double> means;
  std::ostringstream detail;
  for (std::size_t cell = 0; cell < eps_list.size(); ++cell) {
    const double eps = eps_list[cell];
    const DynamicsConfig config = perturbed_config(lb2, eps / 4.0, 0.98);
    const std::uint64_t seed = Rng::derive_trial_seed(424243ULL, cell);
    const HittingTimeResult hits = hitting_time_trials(lb2, potential, q0, eps, config, trials,
                                                       1000000ULL, seed, options.threads);
    if (hits.all_censored) {
      result.pass = false;
      result.detail = "all trials censored at eps " + fmt(eps);
      return result;
    }
    const double censored_share =
        static_cast<double>(hits.censored) / static_cast<double>(trials);
    if (censored_share > 0.01) result.pass = false;
    const KappaEstimate kappa =
        measure_drift_kappa(lb2, potential, config, eps, 400, seed ^ 0x17ULL, 0.05);
    const double bound =
        kappa.kappa > 0.0 ? hits.z0 / kappa.kappa : std::numeric_limits<double>::infinity();
    if (hits.mean_tau > bound) result.pass = false;
    means.push_back(hits.mean_tau);
    detail << "eps=" << fmt(eps) << " mean_tau=" << fmt(hits.mean_tau) << " bound="
           << fmt(bound) << " censored=" << hits.censored << "; ";
  }
  for (std::size_t k = 1; k < means.size(); ++k) {
    const double ratio = means[k] / means[k - 1];
    if (!(ratio >= 1.3 && ratio <= 3.0)) result.pass = false;
    detail << "ratio(" << fmt(eps_list[k]) << ")=" << fmt(ratio) << " ";
  }
  result.detail = detail.str();
  return result;
}

// 7. Level-set containment: escape fraction <= 1/lambda + 3 sigma.
CriterionResult criterion_level_escape(const SuiteOptions& options) {
  CriterionResult result{7, "level-set escape within the Doob bound", true, options.quick, ""};
  const CongestionGame lb2 = make_lb2();
  const ExpectedPotential potential(lb2, PotentialSpec::rosenthal());
  const MixedProfile q0(std::vector<std::vector<double>>{{0.95, 0.05}, {0.05, 0.95}});
  const int trials = options.quick ? 200 : 2000;
  const std::uint64_t horizon = options.quick ? 10000ULL : 100000ULL;

  std::ostringstream detail;
  for (const double lambda : {2.0, 10.0}) {
    const EscapeResult escape = level_escape_probability(
        lb2, potential, q0, lambda, plain_config(lb2, 0.01), trials, horizon,
        Rng::derive_trial_seed(90321ULL, static_cast<std::uint64_t>(lambda)), 200,
        options.threads);
    if (escape.fraction > escape.bound + escape.margin3) result.pass = false;
    detail << "lambda=" << fmt(lambda) << " fraction=" << fmt(escape.fraction) << " bound="
           << fmt(escape.bound + escape.margin3) << "; ";
  }
  result.detail = detail.str();
  return result;
}

// 8. Potential structure: gradient identity, externality symmetry, path
//    independence on the exact-potential fixtures; ordinal verification on
//    all of them (improvement-consistency for SPT task allocation, where the
//    strict sign equivalence provably cannot hold).
CriterionResult criterion_potential_structure(const SuiteOptions&) {
  CriterionResult result{8, "potential structure: Eq. gradient/symmetry/path + ordinal checks",
                         true, false, ""};
  const CongestionGame lb2 = make_lb2();
  const CongestionGame congestion3 = make_congestion3();
  const TaskAllocationGame taskalloc4 = make_taskalloc4();
  const NormalFormGame normform23 = make_normform23();
  std::ostringstream detail;

  struct ExactFixture {
    std::string name;
    const Game& game;
    PotentialSpec phi;
  };
  const std::vector<ExactFixture> exact_fixtures = {
      {"lb2", lb2, PotentialSpec::rosenthal()},
      {"congestion3", congestion3, PotentialSpec::rosenthal()},
      {"normform23", normform23, normform23_potential()},
  };

  for (const auto& fixture : exact_fixtures) {
    const ContinuousPotentialReport report =
        check_continuous_potential(fixture.game, fixture.phi, 100, 57ULL);
    if (!report.gradient_ok || !report.symmetry_tangent_ok) result.pass = false;
    detail << fixture.name << "(grad " << fmt(report.gradient_max_err) << ", sym "
           << fmt(report.symmetry_tangent_max_err) << ") ";

    const ExpectedPotential potential(fixture.game, fixture.phi);
    Rng rng(4242ULL);
    const MixedProfile z = MixedProfile::uniform(fixture.game.strategy_counts());
    const MixedProfile target =
        random_interior_profile(fixture.game.strategy_counts(), rng, 0.05);
    const MixedProfile waypoint =
        random_interior_profile(fixture.game.strategy_counts(), rng, 0.05);
    const PathIntegralResult direct =
        potential_from_path_integral(fixture.game, z, target, 2048);
    const double alternative = path_integral_via(fixture.game, {z, waypoint, target}, 2048);
    const double expected = potential.value(target) - potential.value(z);
    if (std::abs(direct.value - alternative) > 1e-6 ||
        std::abs(direct.value - expected) > 1e-6 || direct.symmetry_warning) {
      result.pass = false;
    }
    detail << "path_gap " << fmt(std::abs(direct.value - alternative)) << "; ";
  }

  // Ambient (literal) externality symmetry holds on the anonymous two-player
  // fixture.
  const ContinuousPotentialReport lb2_ambient =
      check_continuous_potential(lb2, PotentialSpec::rosenthal(), 100, 58ULL);
  if (!lb2_ambient.symmetry_ambient_ok) result.pass = false;

  const OrdinalReport lb2_ordinal = verify_ordinal_potential(lb2, PotentialSpec::rosenthal());
  const OrdinalReport congestion3_ordinal =
      verify_ordinal_potential(congestion3, PotentialSpec::rosenthal());
  const OrdinalReport normform_ordinal =
      verify_ordinal_potential(normform23, normform23_potential());
  const OrdinalReport taskalloc_ordinal =
      verify_ordinal_potential(taskalloc4, PotentialSpec::lex_task_allocation());
  if (!(lb2_ordinal.is_ordinal && lb2_ordinal.is_exact)) result.pass = false;
  if (!(congestion3_ordinal.is_ordinal && congestion3_ordinal.is_exact)) result.pass = false;
  if (!(normform_ordinal.is_ordinal && normform_ordinal.is_exact)) result.pass = false;
  if (!taskalloc_ordinal.improvement_consistent) result.pass = false;
  detail << "ordinal: lb2 " << (lb2_ordinal.is_ordinal ? "ok" : "FAIL") << ", congestion3 "
         << (congestion3_ordinal.is_ordinal ? "ok" : "FAIL") << ", normform23 "
         << (normform_ordinal.is_ordinal ? "ok" : "FAIL") << ", taskalloc4 improvement "
         << (taskalloc_ordinal.improvement_consistent ? "ok" : "FAIL");

  // A corrupted table must be caught with a witness.
  std::vector<double> corrupted = normform23_potential().table_values();
  corrupted[2] += 0.5;
  const OrdinalReport corrupted_report =
      verify_ordinal_potential(normform23, PotentialSpec::table(corrupted));
  if (corrupted_report.is_exact || !corrupted_report.exactness_witness) result.pass = false;

  result.detail = detail.str();
  return result;
}

// 9. 1e6-step simplex preservation and byte-identical seeded replays.
CriterionResult criterion_determinism(const SuiteOptions& options) {
  CriterionResult result{9, "simplex preservation and seeded determinism", true, false, ""};
  const CongestionGame lb2 = make_lb2();
  const std::uint64_t steps = options.quick ? 100000ULL : 1000000ULL;

  double worst_drift = 0.0;
  bool in_range = true;
  for (const bool perturbed : {false, true}) {
    const DynamicsConfig config =
        perturbed ? perturbed_config(lb2, 0.05, 0.9) : plain_config(lb2, 0.05);
    LearnerState state(MixedProfile::uniform(lb2.strategy_counts()), 97531ULL);
    for (std::uint64_t t = 0; t < steps; ++t) {
      step(state, lb2, config);
      for (int i = 0; i < 2; ++i) {
        const auto& block = state.q.block(i);
        const double sum = block[0] + block[1];
        worst_drift = std::max(worst_drift, std::abs(sum - 1.0));
        if (block[0] < 0.0 || block[0] > 1.0 || block[1] < 0.0 || block[1] > 1.0) {
          in_range = false;
        }
      }
    }
  }
  if (worst_drift > 1e-9 || !in_range) result.pass = false;

  // Byte-identical CSVs from identical configs.
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() /
                        ("replidyn_suite_" + std::to_string(Rng(steps).next_u64() % 1000000));
  ExperimentConfig config;
  config.kind = "simulate";
  config.game = "bundled:lb2";
  config.seed = 11;
  config.steps = 20000;
  config.stride = 100;
  config.b = 0.01;
  config.mode = "perturbed";
  config.alpha = 0.9;
  config.q0 = "0.9 0.1 ; 0.8 0.2";
  std::vector<std::vector<std::pair<std::string, std::string>>> digests;
  for (int run_id = 0; run_id < 2; ++run_id) {
    config.out_dir = (base / ("run" + std::to_string(run_id))).string();
    const RunManifest manifest = run_experiment(config);
    digests.push_back(manifest.outputs);
  }
  bool identical = digests[0].size() == digests[1].size();
  for (std::size_t k = 0; identical && k < digests[0].size(); ++k) {
    identical = digests[0][k].second == digests[1][k].second;
  }
  if (!identical) result.pass = false;
  std::error_code ec;
  fs::remove_all(base, ec);

  result.detail = "max per-player sum drift " + fmt(worst_drift) + " over " +
                  std::to_string(steps) + " steps x2 modes; replay digests " +
                  (identical ? "identical" : "DIFFER");
  return result;
}

}  // namespace

SuiteReport builtin_suite(const SuiteOptions& options) {
  using Criterion = CriterionResult (*)(const SuiteOptions&);
  constexpr Criterion criteria[] = {
      criterion_drift_identity, criterion_drift_order,     criterion_folk_theorem,
      criterion_lyapunov_descent, criterion_meanfield_ordering, criterion_hitting_time,
      criterion_level_escape,     criterion_potential_structure, criterion_determinism,
  };
  SuiteReport report;
  for (const Criterion criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult result = criterion(options);
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.items.push_back(std::move(result));
  }
  return report;
}

}  // namespace replidyn
