#include "replidyn/dynamics.hpp"

#include <cmath>
#include <string>

namespace replidyn {

GammaSpec GammaSpec::affine(double cost_bound) {
  if (!(cost_bound > 0.0)) throw ConfigError("gamma cost bound must be positive");
  GammaSpec spec;
  spec.form = Form::Affine;
  spec.cost_bound = cost_bound;
  return spec;
}

GammaSpec GammaSpec::monotone_table(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw ConfigError("gamma table needs at least two points");
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].second < 0.0 || points[k].second > 1.0) {
      throw ConfigError("gamma values must lie in [0, 1]");
    }
    if (k > 0) {
      if (points[k].first <= points[k - 1].first) {
        throw ConfigError("gamma table abscissae must be strictly increasing");
      }
      if (points[k].second > points[k - 1].second) {
        throw ConfigError("gamma must be nonincreasing");
      }
    }
  }
  GammaSpec spec;
  spec.form = Form::Table;
  spec.points = std::move(points);
  spec.cost_bound = spec.points.back().first;
  return spec;
}

double gamma_eval(const GammaSpec& spec, double cost) {
  if (spec.form == GammaSpec::Form::Affine) {
    if (cost < 0.0 || cost > spec.cost_bound) {
      throw ConfigError("cost " + std::to_string(cost) + " outside [0, M] with M = " +
                        std::to_string(spec.cost_bound));
    }
    return (spec.cost_bound - cost) / spec.cost_bound;
  }
  const auto& pts = spec.points;
  if (cost <= pts.front().first) return pts.front().second;
  if (cost >= pts.back().first) return pts.back().second;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (cost <= pts[k].first) {
      const double t = (cost - pts[k - 1].first) / (pts[k].first - pts[k - 1].first);
      return pts[k - 1].second + t * (pts[k].second - pts[k - 1].second);
    }
  }
  return pts.back().second;
}

DynamicsConfig DynamicsConfig::plain(double b, GammaSpec gamma) {
  DynamicsConfig cfg;
  cfg.b = b;
  cfg.alpha = 1.0;
  cfg.mode = UpdateMode::Plain;
  cfg.gamma = std::move(gamma);
  return cfg;
}

DynamicsConfig DynamicsConfig::perturbed(double b, double alpha, GammaSpec gamma) {
  DynamicsConfig cfg;
  cfg.b = b;
  cfg.alpha = alpha;
  cfg.mode = UpdateMode::Perturbed;
  cfg.gamma = std::move(gamma);
  return cfg;
}

void DynamicsConfig::validate(const Game& game) const {
  if (!(b > 0.0) || b > 1.0) throw ConfigError("step size b must lie in (0, 1]");
  if (!(alpha > 0.0) || alpha > 1.0) throw ConfigError("alpha must lie in (0, 1]");
  if (mode == UpdateMode::Plain && alpha != 1.0) {
    throw ConfigError("plain mode fixes alpha = 1");
  }
  if (!player_select.empty()) {
    if (static_cast<int>(player_select.size()) != game.players()) {
      throw ConfigError("player selection vector length must equal the player count");
    }
    double sum = 0.0;
    for (double p : player_select) {
      if (p < 0.0) throw ConfigError("player selection probabilities must be nonnegative");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("player selection must sum to 1");
  }
  if (gamma.form == GammaSpec::Form::Affine && gamma.cost_bound < game.cost_bound()) {
    throw ConfigError("affine gamma bound must cover the game's cost bound");
  }
}

std::vector<double> DynamicsConfig::effective_p(int players) const {
  if (!player_select.empty()) return player_select;
  return std::vector<double>(static_cast<std::size_t>(players),
                             1.0 / static_cast<double>(players));
}

RoundRecord sample_round(LearnerState& state, const Game& game, const DynamicsConfig& config) {
  RoundRecord round;
  const int n = game.players();
  round.strategies.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    round.strategies[i] = state.rng.sample_categorical(state.q.block(i));
  }
  if (config.player_select.empty()) {
    round.updater = state.rng.next_index(n);
  } else {
    round.updater = state.rng.sample_categorical(config.player_select);
  }
  round.realized_cost = game.sample_cost(round.updater, round.strategies, state.rng);
  if (config.mode == UpdateMode::Perturbed) {
    round.replicator_branch = state.rng.next_double() < config.alpha;
    if (!round.replicator_branch) {
      round.uniform_pull = state.rng.next_index(game.strategies(round.updater));
    }
  }
  return round;
}

std::vector<double> replicator_increment(const RoundRecord& round, const std::vector<double>& qi,
                                         const DynamicsConfig& config) {
  const double g = gamma_eval(config.gamma, round.realized_cost);
  const double scale = config.b * g;
  std::vector<double> delta(qi.size());
  for (std::size_t l = 0; l < qi.size(); ++l) delta[l] = -scale * qi[l];
  delta[static_cast<std::size_t>(round.strategies[round.updater])] += scale;
  return delta;
}

std::vector<double> perturbed_increment(const RoundRecord& round, const std::vector<double>& qi,
                                        const DynamicsConfig& config) {
  if (round.replicator_branch) return replicator_increment(round, qi, config);
  const double scale = config.b * config.b;
  std::vector<double> delta(qi.size());
  for (std::size_t l = 0; l < qi.size(); ++l) delta[l] = -scale * qi[l];
  delta[static_cast<std::size_t>(round.uniform_pull)] += scale;
  return delta;
}

void step(LearnerState& state, const Game& game, const DynamicsConfig& config) {
  const RoundRecord round = sample_round(state, game, config);
  auto& qi = state.q.block(round.updater);
  const std::vector<double> delta = config.mode == UpdateMode::Perturbed
                                        ? perturbed_increment(round, qi, config)
                                        : replicator_increment(round, qi, config);
  double sum = 0.0;
  for (std::size_t l = 0; l < qi.size(); ++l) {
    qi[l] += delta[l];
    sum += qi[l];
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    for (double& v : qi) v /= sum;
  }
  ++state.t;
}

void run(LearnerState& state, const Game& game, const DynamicsConfig& config, std::uint64_t steps,
         std::uint64_t stride, const Recorder& recorder) {
  if (stride == 0) stride = 1;
  recorder(state.t, state.q);
  for (std::uint64_t k = 1; k <= steps; ++k) {
    step(state, game, config);
    if (k % stride == 0 || k == steps) recorder(state.t, state.q);
  }
}

Trajectory run(LearnerState& state, const Game& game, const DynamicsConfig& config,
               std::uint64_t steps, std::uint64_t stride) {
  Trajectory traj;
  run(state, game, config, steps, stride,
      [&](std::uint64_t t, const MixedProfile& q) { traj.samples.push_back({t, q}); });
  return traj;
}

}  // namespace replidyn
