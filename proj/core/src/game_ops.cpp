#include "replidyn/game_ops.hpp"

#include <cmath>

namespace replidyn {

double expected_cost(const Game& game, int player, const PureProfile& s) {
  if (!game.has_exact_costs()) {
    throw UndefinedCostError("game exposes only a sampler, no exact expected costs");
  }
  game.check_profile(s);
  return game.pure_cost(player, s);
}

PinnedCosts all_pinned_costs(const Game& game, const MixedProfile& q, std::size_t cap) {
  if (!game.has_exact_costs()) {
    throw UndefinedCostError("exact pinned costs need an exact cost oracle");
  }
  const auto& counts = game.strategy_counts();
  check_enum_cap(counts, cap);
  const int n = game.players();

  PinnedCosts out;
  out.pinned.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.pinned[i].assign(static_cast<std::size_t>(counts[i]), 0.0);

  // prefix[i] = prod_{j<i} q_j(s_j), suffix[i] = prod_{j>=i} q_j(s_j); the
  // opponents' probability excluding i is prefix[i] * suffix[i+1], which
  // avoids dividing by possibly-zero own probabilities.
  std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 1.0);
  std::vector<double> suffix(static_cast<std::size_t>(n) + 1, 1.0);
  std::vector<double> costs;
  for_each_profile(counts, [&](const PureProfile& s) {
    for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] * q.at(i, s[i]);
    suffix[n] = 1.0;
    for (int i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] * q.at(i, s[i]);
    game.pure_costs(s, costs);
    for (int i = 0; i < n; ++i) {
      const double w = prefix[i] * suffix[i + 1];
      if (w != 0.0) out.pinned[i][s[i]] += w * costs[static_cast<std::size_t>(i)];
    }
  });

  out.mixed.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < counts[i]; ++l) out.mixed[i] += q.at(i, l) * out.pinned[i][l];
  }
  return out;
}

double mixed_expected_cost(const Game& game, int player, int strategy, const MixedProfile& q,
                           std::size_t cap) {
  if (!game.has_exact_costs()) {
    throw UndefinedCostError("exact mixed expected cost needs an exact cost oracle");
  }
  const auto& counts = game.strategy_counts();
  check_enum_cap(counts, cap);
  const int n = game.players();
  double total = 0.0;
  for_each_profile(counts, [&](const PureProfile& s) {
    if (s[player] != strategy) return;
    double w = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j != player) w *= q.at(j, s[j]);
    }
    if (w != 0.0) total += w * game.pure_cost(player, s);
  });
  return total;
}

double mixed_expected_cost(const Game& game, int player, const MixedProfile& q, std::size_t cap) {
  double total = 0.0;
  for (int l = 0; l < game.strategies(player); ++l) {
    const double ql = q.at(player, l);
    if (ql != 0.0) total += ql * mixed_expected_cost(game, player, l, q, cap);
  }
  return total;
}

McEstimate mixed_expected_cost_mc(const Game& game, int player, int strategy,
                                  const MixedProfile& q, std::size_t samples, Rng& rng) {
  if (samples == 0) throw GameError("Monte Carlo mode needs a positive sample budget");
  const int n = game.players();
  PureProfile s(static_cast<std::size_t>(n));
  double sum = 0.0;
  double sumsq = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    for (int j = 0; j < n; ++j) s[j] = rng.sample_categorical(q.block(j));
    if (strategy >= 0) s[player] = strategy;
    const double c = game.sample_cost(player, s, rng);
    sum += c;
    sumsq += c * c;
  }
  McEstimate est;
  est.samples = samples;
  est.value = sum / static_cast<double>(samples);
  const double var =
      std::max(0.0, sumsq / static_cast<double>(samples) - est.value * est.value);
  est.std_error = std::sqrt(var / static_cast<double>(samples));
  return est;
}

std::vector<PureProfile> enumerate_pure_nash(const Game& game, std::size_t cap, double tol) {
  if (!game.has_exact_costs()) {
    throw UndefinedCostError("Nash enumeration needs an exact cost oracle");
  }
  const auto& counts = game.strategy_counts();
  check_enum_cap(counts, cap);
  std::vector<PureProfile> result;
  PureProfile deviated;
  for_each_profile(counts, [&](const PureProfile& s) {
    for (int i = 0; i < game.players(); ++i) {
      const double own = game.pure_cost(i, s);
      deviated = s;
      for (int l = 0; l < counts[i]; ++l) {
        if (l == s[i]) continue;
        deviated[i] = l;
        if (game.pure_cost(i, deviated) < own - tol) return;  // strict improvement
      }
    }
    result.push_back(s);
  });
  return result;
}

MixedProfile random_interior_profile(const std::vector<int>& strategy_counts, Rng& rng,
                                     double margin) {
  std::vector<std::vector<double>> blocks;
  blocks.reserve(strategy_counts.size());
  for (int m : strategy_counts) {
    std::vector<double> block(static_cast<std::size_t>(m));
    double sum = 0.0;
    for (double& v : block) {
      v = -std::log(1.0 - rng.next_double());  // Exp(1), Dirichlet(1) after scaling
      sum += v;
    }
    for (double& v : block) {
      v = (1.0 - margin) * (v / sum) + margin / static_cast<double>(m);
    }
    blocks.push_back(std::move(block));
  }
  return MixedProfile(std::move(blocks));
}

}  // namespace replidyn
