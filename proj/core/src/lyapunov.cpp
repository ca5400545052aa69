#include "replidyn/lyapunov.hpp"

#include <cmath>

namespace replidyn {
namespace {

void require_affine_gamma(const DynamicsConfig& config) {
  if (config.gamma.form != GammaSpec::Form::Affine) {
    throw ExactOracleError("closed-form drift needs the affine gamma");
  }
}

MixedProfile nudged(const MixedProfile& q, int player, int strategy, double delta) {
  MixedProfile out = q;
  out.at(player, strategy) += delta;
  return out;
}

MixedProfile nudged_tangent(const MixedProfile& q, int player, int up, int down, double delta) {
  MixedProfile out = q;
  out.at(player, up) += delta;
  out.at(player, down) -= delta;
  return out;
}

}  // namespace

double analytic_drift_from_pinned(const std::vector<std::vector<double>>& f_pinned,
                                  const PinnedCosts& costs, const MixedProfile& q,
                                  const std::vector<double>& p, double b, double alpha,
                                  double cost_bound) {
  double acc = 0.0;
  for (int i = 0; i < q.players(); ++i) {
    double per_player = 0.0;
    for (int l = 0; l < q.strategies(i); ++l) {
      for (int m = l + 1; m < q.strategies(i); ++m) {
        const double df = f_pinned[i][l] - f_pinned[i][m];
        const double dc = costs.pinned[i][l] - costs.pinned[i][m];
        per_player += q.at(i, l) * q.at(i, m) * df * dc;
      }
    }
    acc += p[i] * per_player;
  }
  return -b * alpha / cost_bound * acc;
}

double analytic_drift(const Game& game, const ExpectedPotential& potential, const MixedProfile& q,
                      const DynamicsConfig& config, std::size_t cap) {
  require_affine_gamma(config);
  if (!game.deterministic_costs()) {
    throw ExactOracleError("closed-form drift needs deterministic expected costs");
  }
  const std::vector<double> p = config.effective_p(game.players());
  const auto f_pinned = potential.pinned_all(q);
  const PinnedCosts costs = all_pinned_costs(game, q, cap);
  return analytic_drift_from_pinned(f_pinned, costs, q, p, config.b, config.alpha,
                                    config.gamma.cost_bound);
}

double analytic_drift(const Game& game, const PotentialSpec& phi, const MixedProfile& q,
                      const DynamicsConfig& config, std::size_t cap) {
  return analytic_drift(game, ExpectedPotential(game, phi, cap), q, config, cap);
}

bool is_epsilon_nash(const Game& game, const MixedProfile& q, double eps, std::size_t cap) {
  const PinnedCosts costs = all_pinned_costs(game, q, cap);
  for (int i = 0; i < game.players(); ++i) {
    const double threshold = (1.0 - eps) * costs.mixed[i];
    for (int l = 0; l < game.strategies(i); ++l) {
      if (costs.pinned[i][l] < threshold - 1e-12) return false;
    }
  }
  return true;
}

ContinuousPotentialReport check_continuous_potential(const Game& game, const PotentialSpec& phi,
                                                     int samples, std::uint64_t seed,
                                                     std::size_t cap) {
  constexpr double kDelta = 1e-5;
  constexpr double kGradTol = 1e-8;
  constexpr double kSymTol = 1e-4;

  ContinuousPotentialReport report;
  const ExpectedPotential potential(game, phi, cap);
  Rng rng(seed);
  const int n = game.players();

  for (int sample = 0; sample < samples; ++sample) {
    const MixedProfile q = random_interior_profile(game.strategy_counts(), rng, 0.1);
    ++report.profiles_checked;

    // Gradient identity in pinned-difference form.
    const auto f_pinned = potential.pinned_all(q);
    const PinnedCosts costs = all_pinned_costs(game, q, cap);
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < game.strategies(i); ++l) {
        for (int m = l + 1; m < game.strategies(i); ++m) {
          const double err = std::abs((f_pinned[i][l] - f_pinned[i][m]) -
                                      (costs.pinned[i][l] - costs.pinned[i][m]));
          if (err > report.gradient_max_err) report.gradient_max_err = err;
          if (err > kGradTol && report.gradient_ok) {
            report.gradient_ok = false;
            report.gradient_witness = "player " + std::to_string(i + 1) + " strategies " +
                                      std::to_string(l + 1) + "/" + std::to_string(m + 1) +
                                      " err " + std::to_string(err);
          }
        }
      }
    }

    // Externality symmetry by central finite differences.
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        // Ambient reading (informational outside anonymous 2-player games).
        for (int l = 0; l < game.strategies(i); ++l) {
          for (int lp = 0; lp < game.strategies(j); ++lp) {
            const double dij = (mixed_expected_cost(game, i, l, nudged(q, j, lp, kDelta), cap) -
                                mixed_expected_cost(game, i, l, nudged(q, j, lp, -kDelta), cap)) /
                               (2.0 * kDelta);
            const double dji = (mixed_expected_cost(game, j, lp, nudged(q, i, l, kDelta), cap) -
                                mixed_expected_cost(game, j, lp, nudged(q, i, l, -kDelta), cap)) /
                               (2.0 * kDelta);
            const double err = std::abs(dij - dji);
            if (err > report.symmetry_ambient_max_err) report.symmetry_ambient_max_err = err;
            if (err > kSymTol) report.symmetry_ambient_ok = false;
          }
        }
        // Tangent double-difference reading.
        for (int l = 0; l < game.strategies(i); ++l) {
          for (int m = l + 1; m < game.strategies(i); ++m) {
            for (int lp = 0; lp < game.strategies(j); ++lp) {
              for (int mp = lp + 1; mp < game.strategies(j); ++mp) {
                const MixedProfile qjp = nudged_tangent(q, j, lp, mp, kDelta);
                const MixedProfile qjm = nudged_tangent(q, j, lp, mp, -kDelta);
                const double di = ((mixed_expected_cost(game, i, l, qjp, cap) -
                                    mixed_expected_cost(game, i, m, qjp, cap)) -
                                   (mixed_expected_cost(game, i, l, qjm, cap) -
                                    mixed_expected_cost(game, i, m, qjm, cap))) /
                                  (2.0 * kDelta);
                const MixedProfile qip = nudged_tangent(q, i, l, m, kDelta);
                const MixedProfile qim = nudged_tangent(q, i, l, m, -kDelta);
                const double dj = ((mixed_expected_cost(game, j, lp, qip, cap) -
                                    mixed_expected_cost(game, j, mp, qip, cap)) -
                                   (mixed_expected_cost(game, j, lp, qim, cap) -
                                    mixed_expected_cost(game, j, mp, qim, cap))) /
                                  (2.0 * kDelta);
                const double err = std::abs(di - dj);
                if (err > report.symmetry_tangent_max_err) {
                  report.symmetry_tangent_max_err = err;
                }
                if (err > kSymTol && report.symmetry_tangent_ok) {
                  report.symmetry_tangent_ok = false;
                  report.symmetry_witness = "players " + std::to_string(i + 1) + "/" +
                                            std::to_string(j + 1) + " err " + std::to_string(err);
                }
              }
            }
          }
        }
      }
    }
  }
  return report;
}

namespace {

double straight_leg_integral(const Game& game, const MixedProfile& from, const MixedProfile& to,
                             int segments, std::size_t cap) {
  const int n = game.players();
  double total = 0.0;
  for (int k = 0; k < segments; ++k) {
    const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(segments);
    MixedProfile x = from;
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < x.strategies(i); ++l) {
        x.at(i, l) += t * (to.at(i, l) - from.at(i, l));
      }
    }
    const PinnedCosts costs = all_pinned_costs(game, x, cap);
    double integrand = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < x.strategies(i); ++l) {
        integrand += costs.pinned[i][l] * (to.at(i, l) - from.at(i, l));
      }
    }
    total += integrand / static_cast<double>(segments);
  }
  return total;
}

}  // namespace

double path_integral_via(const Game& game, const std::vector<MixedProfile>& waypoints,
                         int segments_per_leg, std::size_t cap) {
  if (waypoints.size() < 2) throw ConfigError("path needs at least two waypoints");
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < waypoints.size(); ++k) {
    total += straight_leg_integral(game, waypoints[k], waypoints[k + 1], segments_per_leg, cap);
  }
  return total;
}

PathIntegralResult potential_from_path_integral(const Game& game, const MixedProfile& z,
                                                const MixedProfile& q, int segments,
                                                std::size_t cap, bool check_symmetry) {
  PathIntegralResult result;
  if (check_symmetry) {
    // Spot-check tangent symmetry; path dependence is expected when it fails.
    constexpr double kDelta = 1e-5;
    Rng rng(0xA11CEULL);
    for (int sample = 0; sample < 4 && !result.symmetry_warning; ++sample) {
      const MixedProfile x = random_interior_profile(game.strategy_counts(), rng, 0.2);
      for (int i = 0; i < game.players() && !result.symmetry_warning; ++i) {
        for (int j = i + 1; j < game.players() && !result.symmetry_warning; ++j) {
          if (game.strategies(i) < 2 || game.strategies(j) < 2) continue;
          const MixedProfile xjp = nudged_tangent(x, j, 0, 1, kDelta);
          const MixedProfile xjm = nudged_tangent(x, j, 0, 1, -kDelta);
          const double di = ((mixed_expected_cost(game, i, 0, xjp, cap) -
                              mixed_expected_cost(game, i, 1, xjp, cap)) -
                             (mixed_expected_cost(game, i, 0, xjm, cap) -
                              mixed_expected_cost(game, i, 1, xjm, cap))) /
                            (2.0 * kDelta);
          const MixedProfile xip = nudged_tangent(x, i, 0, 1, kDelta);
          const MixedProfile xim = nudged_tangent(x, i, 0, 1, -kDelta);
          const double dj = ((mixed_expected_cost(game, j, 0, xip, cap) -
                              mixed_expected_cost(game, j, 1, xip, cap)) -
                             (mixed_expected_cost(game, j, 0, xim, cap) -
                              mixed_expected_cost(game, j, 1, xim, cap))) /
                            (2.0 * kDelta);
          if (std::abs(di - dj) > 1e-3) result.symmetry_warning = true;
        }
      }
    }
  }
  result.value = straight_leg_integral(game, z, q, segments, cap);
  return result;
}

}  // namespace replidyn
