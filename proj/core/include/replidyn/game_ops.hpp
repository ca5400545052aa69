#pragma once

#include <cstddef>
#include <vector>

#include "replidyn/game.hpp"

namespace replidyn {

// Exact expected cost of `player` under pure profile s. Throws
// UndefinedCostError for sampler-only games.
double expected_cost(const Game& game, int player, const PureProfile& s);

// Pinned expected costs for every player and strategy in one enumeration
// pass: pinned[i][l] = E[c_i(e_l, S_-i)] with opponents drawn from Q, and
// mixed[i] = E[c_i(q_i, Q_-i)] = sum_l q_{i,l} pinned[i][l].
struct PinnedCosts {
  std::vector<std::vector<double>> pinned;
  std::vector<double> mixed;
};
PinnedCosts all_pinned_costs(const Game& game, const MixedProfile& q,
                             std::size_t cap = kDefaultEnumCap);

// Exact value of E[c_i(e_l, Q_-i)] by enumeration.
double mixed_expected_cost(const Game& game, int player, int strategy, const MixedProfile& q,
                           std::size_t cap = kDefaultEnumCap);

// Player's own mixed strategy against Q_-i.
double mixed_expected_cost(const Game& game, int player, const MixedProfile& q,
                           std::size_t cap = kDefaultEnumCap);

// Monte Carlo fallback above the cap. strategy == -1 samples the player's own
// mixed strategy.
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};
McEstimate mixed_expected_cost_mc(const Game& game, int player, int strategy,
                                  const MixedProfile& q, std::size_t samples, Rng& rng);

// All pure profiles with no strictly cheaper unilateral pure deviation.
std::vector<PureProfile> enumerate_pure_nash(const Game& game, std::size_t cap = kDefaultEnumCap,
                                             double tol = 1e-12);

// Random interior profile; margin mixes toward uniform so every entry is at
// least margin / m_i.
MixedProfile random_interior_profile(const std::vector<int>& strategy_counts, Rng& rng,
                                     double margin = 0.0);

}  // namespace replidyn
