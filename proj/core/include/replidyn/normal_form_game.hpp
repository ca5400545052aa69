#pragma once

#include <vector>

#include "replidyn/game.hpp"

namespace replidyn {

// Explicit cost tensors, one table per player indexed by the row-major
// profile index (last player fastest). Optional zero-mean uniform noise on
// the sampler, clamped into [0, M].
class NormalFormGame : public Game {
 public:
  NormalFormGame(std::vector<int> strategy_counts, std::vector<std::vector<double>> cost_tables,
                 double cost_bound, double noise_amplitude = 0.0);

  double pure_cost(int player, const PureProfile& s) const override;
  double sample_cost(int player, const PureProfile& s, Rng& rng) const override;
  bool deterministic_costs() const override { return noise_ == 0.0; }

  double noise_amplitude() const { return noise_; }
  const std::vector<double>& table(int player) const { return tables_[player]; }

 private:
  std::vector<std::vector<double>> tables_;
  double noise_;
};

}  // namespace replidyn
