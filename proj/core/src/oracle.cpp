#include "replidyn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "replidyn/parallel.hpp"

namespace replidyn {
namespace {

void require_exact_round(const Game& game, const DynamicsConfig& config) {
  if (!game.has_exact_costs() || !game.deterministic_costs()) {
    throw ExactOracleError(
        "exact round enumeration needs deterministic expected costs; "
        "use the Monte Carlo validators for noisy games");
  }
  if (config.gamma.form != GammaSpec::Form::Affine) {
    throw ExactOracleError("exact round enumeration needs the affine gamma");
  }
}

// Enumerates every (profile, updater, branch) outcome of one round and calls
// visit(weight, updater, increment, replicator_branch).
template <typename Visit>
double for_each_round_outcome(const Game& game, const MixedProfile& q,
                              const DynamicsConfig& config, std::size_t cap, Visit&& visit) {
  require_exact_round(game, config);
  const auto& counts = game.strategy_counts();
  check_enum_cap(counts, cap);
  const int n = game.players();
  const std::vector<double> p = config.effective_p(n);
  const bool perturbed = config.mode == UpdateMode::Perturbed;
  const double alpha = perturbed ? config.alpha : 1.0;

  double prob_total = 0.0;
  std::vector<double> costs;
  std::vector<double> delta;
  for_each_profile(counts, [&](const PureProfile& s) {
    const double pi_s = profile_probability(q, s);
    if (pi_s == 0.0) {
      return;  // zero-probability outcomes contribute nothing
    }
    game.pure_costs(s, costs);
    for (int i = 0; i < n; ++i) {
      if (p[i] == 0.0) continue;
      const auto& qi = q.block(i);
      const int mi = static_cast<int>(qi.size());
      // Replicator branch.
      {
        const double w = pi_s * p[i] * alpha;
        const double g = gamma_eval(config.gamma, costs[static_cast<std::size_t>(i)]);
        const double scale = config.b * g;
        delta.assign(qi.size(), 0.0);
        for (int l = 0; l < mi; ++l) delta[l] = -scale * qi[l];
        delta[static_cast<std::size_t>(s[i])] += scale;
        visit(w, i, delta, true);
        prob_total += w;
      }
      // Uniform-pull branch: F = b (e_j - q_i), so the increment is b^2.
      if (perturbed) {
        const double w = pi_s * p[i] * (1.0 - alpha) / static_cast<double>(mi);
        const double scale = config.b * config.b;
        for (int j = 0; j < mi; ++j) {
          delta.assign(qi.size(), 0.0);
          for (int l = 0; l < mi; ++l) delta[l] = -scale * qi[l];
          delta[static_cast<std::size_t>(j)] += scale;
          visit(w, i, delta, false);
          prob_total += w;
        }
      }
    }
  });
  return prob_total;
}

}  // namespace

Tangent exact_expected_update(const Game& game, const MixedProfile& q,
                              const DynamicsConfig& config, std::size_t cap) {
  Tangent mean(static_cast<std::size_t>(game.players()));
  for (int i = 0; i < game.players(); ++i) {
    mean[i].assign(static_cast<std::size_t>(game.strategies(i)), 0.0);
  }
  for_each_round_outcome(game, q, config, cap,
                         [&](double w, int i, const std::vector<double>& delta, bool) {
                           for (std::size_t l = 0; l < delta.size(); ++l) {
                             mean[static_cast<std::size_t>(i)][l] += w * delta[l];
                           }
                         });
  return mean;
}

DriftReport exact_one_step_drift(const Game& game, const LyapunovFn& lyapunov,
                                 const MixedProfile& q, const DynamicsConfig& config,
                                 std::size_t cap) {
  DriftReport report;
  report.b = config.b;
  const double f0 = lyapunov.value(q);

  Tangent mean(static_cast<std::size_t>(game.players()));
  for (int i = 0; i < game.players(); ++i) {
    mean[i].assign(static_cast<std::size_t>(game.strategies(i)), 0.0);
  }

  MixedProfile successor = q;
  report.prob_total = for_each_round_outcome(
      game, q, config, cap,
      [&](double w, int i, const std::vector<double>& delta, bool replicator_branch) {
        auto& block = successor.block(i);
        const auto& base = q.block(i);
        for (std::size_t l = 0; l < delta.size(); ++l) block[l] = base[l] + delta[l];
        const double df = lyapunov.value(successor) - f0;
        block = base;  // restore before the next outcome
        report.exact_dF += w * df;
        if (replicator_branch) {
          report.replicator_part += w * df;
        } else {
          report.uniform_part += w * df;
        }
        for (std::size_t l = 0; l < delta.size(); ++l) {
          mean[static_cast<std::size_t>(i)][l] += w * delta[l];
        }
      });

  const auto f_pinned = lyapunov.pinned_all(q);
  for (int i = 0; i < game.players(); ++i) {
    for (int l = 0; l < game.strategies(i); ++l) {
      report.gradient_form += f_pinned[i][l] * mean[i][l];
    }
  }

  const PinnedCosts costs = all_pinned_costs(game, q, cap);
  report.formula_dF =
      analytic_drift_from_pinned(f_pinned, costs, q, config.effective_p(game.players()),
                                 config.b, config.alpha, config.gamma.cost_bound);

  report.identity_gap = std::abs(report.exact_dF - report.gradient_form);
  report.order_gap = std::abs(report.exact_dF - report.formula_dF);
  report.multiaffine_identity_ok = report.identity_gap <= 1e-12;
  return report;
}

DriftReport exact_one_step_drift(const Game& game, const ExpectedPotential& potential,
                                 const MixedProfile& q, const DynamicsConfig& config,
                                 std::size_t cap) {
  return exact_one_step_drift(game, potential.as_lyapunov(), q, config, cap);
}

HittingTimeResult hitting_time_trials(const Game& game, const ExpectedPotential& potential,
                                      const MixedProfile& q0, double eps,
                                      const DynamicsConfig& config, int trials,
                                      std::uint64_t max_steps, std::uint64_t seed, int threads,
                                      std::size_t cap) {
  config.validate(game);
  HittingTimeResult result;
  result.trials = trials;
  result.z0 = potential.value(q0);
  result.taus.assign(static_cast<std::size_t>(trials), 0);
  std::vector<char> hit(static_cast<std::size_t>(trials), 0);

  detail::parallel_for(trials, threads, [&](int trial) {
    LearnerState state(q0, Rng::for_trial(seed, static_cast<std::uint64_t>(trial)));
    if (is_epsilon_nash(game, state.q, eps, cap)) {
      result.taus[static_cast<std::size_t>(trial)] = 0;
      hit[static_cast<std::size_t>(trial)] = 1;
      return;
    }
    for (std::uint64_t t = 1; t <= max_steps; ++t) {
      step(state, game, config);
      if (is_epsilon_nash(game, state.q, eps, cap)) {
        result.taus[static_cast<std::size_t>(trial)] = t;
        hit[static_cast<std::size_t>(trial)] = 1;
        return;
      }
    }
    result.taus[static_cast<std::size_t>(trial)] = max_steps;
  });

  std::vector<double> finished;
  finished.reserve(static_cast<std::size_t>(trials));
  for (int k = 0; k < trials; ++k) {
    if (hit[static_cast<std::size_t>(k)]) {
      finished.push_back(static_cast<double>(result.taus[static_cast<std::size_t>(k)]));
    } else {
      ++result.censored;
    }
  }
  if (finished.empty()) {
    result.all_censored = true;
    return result;
  }
  double sum = 0.0;
  for (double tau : finished) sum += tau;
  result.mean_tau = sum / static_cast<double>(finished.size());

  // Bootstrap 95% CI of the mean, 1000 resamples.
  constexpr int kResamples = 1000;
  std::vector<double> means(kResamples);
  Rng boot(seed ^ 0xB007B007B007ULL);
  const int m = static_cast<int>(finished.size());
  for (int r = 0; r < kResamples; ++r) {
    double acc = 0.0;
    for (int k = 0; k < m; ++k) acc += finished[static_cast<std::size_t>(boot.next_index(m))];
    means[static_cast<std::size_t>(r)] = acc / static_cast<double>(m);
  }
  std::sort(means.begin(), means.end());
  result.ci_lo = means[static_cast<std::size_t>(kResamples * 25 / 1000)];
  result.ci_hi = means[static_cast<std::size_t>(kResamples * 975 / 1000) - 1];
  return result;
}

KappaEstimate measure_drift_kappa(const Game& game, const ExpectedPotential& potential,
                                  const DynamicsConfig& config, double eps, int samples,
                                  std::uint64_t seed, double interior_margin, std::size_t cap) {
  KappaEstimate estimate;
  estimate.kappa = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  const LyapunovFn fn = potential.as_lyapunov();
  for (int k = 0; k < samples; ++k) {
    const MixedProfile q = random_interior_profile(game.strategy_counts(), rng, interior_margin);
    ++estimate.sampled;
    if (is_epsilon_nash(game, q, eps, cap)) continue;
    const DriftReport report = exact_one_step_drift(game, fn, q, config, cap);
    estimate.kappa = std::min(estimate.kappa, -report.exact_dF);
    ++estimate.usable;
  }
  if (estimate.usable == 0) estimate.kappa = 0.0;
  return estimate;
}

EscapeResult level_escape_probability(const Game& game, const ExpectedPotential& potential,
                                      const MixedProfile& q0, double lambda,
                                      const DynamicsConfig& config, int trials,
                                      std::uint64_t horizon, std::uint64_t seed,
                                      int precheck_samples, int threads, std::size_t cap) {
  if (lambda < 1.0) throw ConfigError("lambda must be at least 1");
  config.validate(game);

  EscapeResult result;
  result.trials = trials;
  result.f0 = potential.value(q0);
  result.threshold = lambda * result.f0;
  result.bound = 1.0 / lambda;
  result.margin3 =
      3.0 * std::sqrt(result.bound * (1.0 - result.bound) / static_cast<double>(trials));

  // Supermartingale precondition: the exact one-step drift must be
  // nonpositive on sampled profiles above the starting level.
  if (precheck_samples > 0) {
    Rng rng(seed ^ 0x5EED5EED5EEDULL);
    const LyapunovFn fn = potential.as_lyapunov();
    for (int k = 0; k < precheck_samples; ++k) {
      const MixedProfile q = random_interior_profile(game.strategy_counts(), rng, 0.0);
      if (potential.value(q) <= result.f0) continue;
      const DriftReport report = exact_one_step_drift(game, fn, q, config, cap);
      if (report.exact_dF > 1e-12) {
        throw DriftPreconditionError(
            "one-step drift is positive above the starting level (dF = " +
            std::to_string(report.exact_dF) + "); shrink b or use the plain dynamics");
      }
    }
  }

  std::vector<char> escaped(static_cast<std::size_t>(trials), 0);
  detail::parallel_for(trials, threads, [&](int trial) {
    LearnerState state(q0, Rng::for_trial(seed, static_cast<std::uint64_t>(trial)));
    double sup = potential.value(state.q);
    for (std::uint64_t t = 1; t <= horizon && sup < result.threshold; ++t) {
      step(state, game, config);
      sup = std::max(sup, potential.value(state.q));
    }
    escaped[static_cast<std::size_t>(trial)] = sup >= result.threshold ? 1 : 0;
  });
  for (char e : escaped) result.escapes += e;
  result.fraction = static_cast<double>(result.escapes) / static_cast<double>(trials);
  return result;
}

std::vector<OdeDeviationRow> ode_deviation(const Game& game, const MixedProfile& q0,
                                           const std::vector<double>& b_list, double T,
                                           int trials, std::uint64_t seed,
                                           const DynamicsConfig& proto, double h_ref,
                                           bool mean_dynamics, int threads, std::size_t cap) {
  if (proto.gamma.form != GammaSpec::Form::Affine ||
      proto.gamma.cost_bound != game.cost_bound()) {
    throw ExactOracleError("deviation study needs the affine gamma with M = the game bound");
  }
  const std::vector<double> p = proto.effective_p(game.players());
  const VectorField field = replicator_field(game, p, /*gamma_scaled=*/true, cap);
  const OdeSolution reference = integrate(field, q0, T, h_ref, 1);

  const auto ref_at = [&](double t) -> MixedProfile {
    const double pos = t / h_ref;
    const auto lo = static_cast<std::size_t>(std::min(
        static_cast<double>(reference.states.size() - 1), std::max(0.0, std::floor(pos))));
    const std::size_t hi = std::min(lo + 1, reference.states.size() - 1);
    const double frac = std::clamp(pos - static_cast<double>(lo), 0.0, 1.0);
    if (frac == 0.0 || lo == hi) return reference.states[lo];
    MixedProfile mix = reference.states[lo];
    const MixedProfile& upper = reference.states[hi];
    for (int i = 0; i < mix.players(); ++i) {
      for (int l = 0; l < mix.strategies(i); ++l) {
        mix.at(i, l) += frac * (upper.at(i, l) - mix.at(i, l));
      }
    }
    return mix;
  };

  std::vector<OdeDeviationRow> rows;
  for (const double b : b_list) {
    DynamicsConfig config = proto;
    config.b = b;
    config.validate(game);
    const auto steps = static_cast<std::uint64_t>(std::ceil(T / b - 1e-9));

    if (mean_dynamics) {
      // Deterministic recursion on the exact one-step expectation.
      MixedProfile q = q0;
      double sup = 0.0;
      for (std::uint64_t k = 1; k <= steps; ++k) {
        const Tangent mean = exact_expected_update(game, q, config, cap);
        for (int i = 0; i < q.players(); ++i) {
          for (int l = 0; l < q.strategies(i); ++l) q.at(i, l) += mean[i][l];
        }
        sup = std::max(sup, q.l_inf_distance(ref_at(static_cast<double>(k) * b)));
      }
      rows.push_back({b, sup, 0.0, 1});
      continue;
    }

    std::vector<double> sups(static_cast<std::size_t>(trials), 0.0);
    detail::parallel_for(trials, threads, [&](int trial) {
      LearnerState state(q0, Rng::for_trial(seed, static_cast<std::uint64_t>(trial)));
      double sup = 0.0;
      for (std::uint64_t k = 1; k <= steps; ++k) {
        step(state, game, config);
        sup = std::max(sup, state.q.l_inf_distance(ref_at(static_cast<double>(k) * b)));
      }
      sups[static_cast<std::size_t>(trial)] = sup;
    });
    double sum = 0.0;
    double sumsq = 0.0;
    for (double s : sups) {
      sum += s;
      sumsq += s * s;
    }
    const double mean = sum / static_cast<double>(trials);
    const double var = std::max(0.0, sumsq / static_cast<double>(trials) - mean * mean);
    rows.push_back({b, mean, std::sqrt(var / static_cast<double>(trials)), trials});
  }
  return rows;
}

double fit_loglog_slope(const std::vector<std::pair<double, double>>& points, double y_floor) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > y_floor)) continue;
    const double lx = std::log(x);
    const double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

}  // namespace replidyn
