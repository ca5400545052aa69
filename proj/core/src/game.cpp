#include "replidyn/game.hpp"

#include <string>

namespace replidyn {

Game::Game(std::vector<int> strategy_counts, double cost_bound)
    : counts_(std::move(strategy_counts)), cost_bound_(cost_bound) {
  if (counts_.empty()) throw GameError("game needs at least one player");
  for (int m : counts_) {
    if (m <= 0) throw GameError("every player needs at least one strategy");
  }
  if (!(cost_bound_ > 0.0)) throw GameError("cost bound M must be positive");
}

void Game::pure_costs(const PureProfile& s, std::vector<double>& out) const {
  out.resize(static_cast<std::size_t>(players()));
  for (int i = 0; i < players(); ++i) out[static_cast<std::size_t>(i)] = pure_cost(i, s);
}

double Game::sample_cost(int player, const PureProfile& s, Rng& rng) const {
  (void)rng;
  return pure_cost(player, s);
}

void Game::check_profile(const PureProfile& s) const {
  if (static_cast<int>(s.size()) != players()) {
    throw GameError("profile length " + std::to_string(s.size()) + " does not match player count " +
                    std::to_string(players()));
  }
  for (int i = 0; i < players(); ++i) {
    if (s[i] < 0 || s[i] >= counts_[i]) {
      throw GameError("strategy index out of range for player " + std::to_string(i + 1));
    }
  }
}

}  // namespace replidyn
