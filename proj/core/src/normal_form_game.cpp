#include "replidyn/normal_form_game.hpp"

#include <algorithm>
#include <string>

namespace replidyn {

NormalFormGame::NormalFormGame(std::vector<int> strategy_counts,
                               std::vector<std::vector<double>> cost_tables, double cost_bound,
                               double noise_amplitude)
    : Game(std::move(strategy_counts), cost_bound),
      tables_(std::move(cost_tables)),
      noise_(noise_amplitude) {
  if (static_cast<int>(tables_.size()) != players()) {
    throw GameError("need one cost table per player");
  }
  const std::size_t expect = profile_count(this->strategy_counts(), kDefaultEnumCap);
  for (int i = 0; i < players(); ++i) {
    if (tables_[i].size() != expect) {
      throw GameError("cost table of player " + std::to_string(i + 1) + " has " +
                      std::to_string(tables_[i].size()) + " entries, expected " +
                      std::to_string(expect));
    }
    for (double c : tables_[i]) {
      if (c < 0.0 || c > this->cost_bound()) {
        throw GameError("cost entry outside [0, M]");
      }
    }
  }
  if (noise_ < 0.0) throw GameError("noise amplitude must be nonnegative");
}

double NormalFormGame::pure_cost(int player, const PureProfile& s) const {
  return tables_[player][profile_index(strategy_counts(), s)];
}

double NormalFormGame::sample_cost(int player, const PureProfile& s, Rng& rng) const {
  double c = pure_cost(player, s);
  if (noise_ > 0.0) {
    c += rng.next_range(-noise_, noise_);
    c = std::clamp(c, 0.0, cost_bound());
  }
  return c;
}

}  // namespace replidyn
