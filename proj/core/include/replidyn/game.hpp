#pragma once

#include <cstddef>
#include <vector>

#include "replidyn/profile.hpp"
#include "replidyn/rng.hpp"

namespace replidyn {

// Finite game contract. Costs are nonnegative and bounded by cost_bound();
// concrete families compute exact expected costs from their closed form.
// Games are immutable after construction and safe to share across threads;
// samplers take their randomness explicitly.
class Game {
 public:
  virtual ~Game() = default;

  int players() const { return static_cast<int>(counts_.size()); }
  const std::vector<int>& strategy_counts() const { return counts_; }
  int strategies(int player) const { return counts_[player]; }

  // Strict upper bound M used by the affine gamma; realized costs lie in [0, M].
  double cost_bound() const { return cost_bound_; }

  // False for sampler-only games, which cannot serve exact oracles.
  virtual bool has_exact_costs() const { return true; }

  // True when sample_cost() returns pure_cost() with no noise.
  virtual bool deterministic_costs() const { return true; }

  // Exact expected cost of `player` under pure profile s.
  virtual double pure_cost(int player, const PureProfile& s) const = 0;

  // Expected costs of every player at once; overridden where a single pass is
  // cheaper than per-player recomputation.
  virtual void pure_costs(const PureProfile& s, std::vector<double>& out) const;

  // Realized (possibly noisy) cost; mean over repeated calls equals pure_cost.
  virtual double sample_cost(int player, const PureProfile& s, Rng& rng) const;

  void check_profile(const PureProfile& s) const;

 protected:
  Game(std::vector<int> strategy_counts, double cost_bound);

 private:
  std::vector<int> counts_;
  double cost_bound_;
};

}  // namespace replidyn
