#include "replidyn/congestion_game.hpp"

#include <string>

namespace replidyn {

std::vector<int> CongestionGame::counts_of(
    const std::vector<std::vector<std::vector<int>>>& strats) {
  std::vector<int> counts;
  counts.reserve(strats.size());
  for (const auto& per_player : strats) counts.push_back(static_cast<int>(per_player.size()));
  return counts;
}

CongestionGame::CongestionGame(int resources,
                               std::vector<std::vector<std::vector<int>>> strategies,
                               std::vector<std::vector<double>> cost_tables, double cost_bound,
                               std::vector<int> weights)
    : Game(counts_of(strategies), cost_bound),
      resources_(resources),
      strategies_(std::move(strategies)),
      cost_tables_(std::move(cost_tables)),
      weights_(std::move(weights)) {
  if (resources_ <= 0) throw GameError("need at least one resource");
  if (weights_.empty()) weights_.assign(static_cast<std::size_t>(players()), 1);
  if (static_cast<int>(weights_.size()) != players()) throw GameError("one weight per player");
  for (int w : weights_) {
    if (w <= 0) throw GameError("weights must be positive integers");
    if (w != 1) unit_weights_ = false;
    total_weight_ += w;
  }
  for (const auto& per_player : strategies_) {
    for (const auto& subset : per_player) {
      if (subset.empty()) throw GameError("strategies must use at least one resource");
      for (int r : subset) {
        if (r < 0 || r >= resources_) throw GameError("resource id out of range");
      }
    }
  }
  if (static_cast<int>(cost_tables_.size()) != resources_) {
    throw GameError("one cost table per resource");
  }
  for (int r = 0; r < resources_; ++r) {
    auto& table = cost_tables_[r];
    if (static_cast<int>(table.size()) < total_weight_ + 1) {
      throw GameError("cost table of resource " + std::to_string(r + 1) +
                      " must cover loads up to " + std::to_string(total_weight_));
    }
    if (table[0] != 0.0) throw GameError("cost at load 0 must be 0");
    for (std::size_t k = 1; k < table.size(); ++k) {
      if (table[k] < table[k - 1]) {
        throw GameError("cost table of resource " + std::to_string(r + 1) +
                        " is not nondecreasing");
      }
    }
  }
}

CongestionGame CongestionGame::load_balancing(int players, int machines,
                                              std::vector<std::vector<double>> machine_tables,
                                              double cost_bound, std::vector<int> weights) {
  std::vector<std::vector<std::vector<int>>> strategies(
      static_cast<std::size_t>(players));
  for (auto& per_player : strategies) {
    per_player.reserve(static_cast<std::size_t>(machines));
    for (int r = 0; r < machines; ++r) per_player.push_back({r});
  }
  return CongestionGame(machines, std::move(strategies), std::move(machine_tables), cost_bound,
                        std::move(weights));
}

void CongestionGame::loads(const PureProfile& s, std::vector<int>& out) const {
  out.assign(static_cast<std::size_t>(resources_), 0);
  for (int i = 0; i < players(); ++i) {
    for (int r : strategies_[i][s[i]]) out[static_cast<std::size_t>(r)] += weights_[i];
  }
}

double CongestionGame::pure_cost(int player, const PureProfile& s) const {
  std::vector<int> load;
  loads(s, load);
  double c = 0.0;
  for (int r : strategies_[player][s[player]]) c += cost_tables_[r][load[r]];
  return c;
}

void CongestionGame::pure_costs(const PureProfile& s, std::vector<double>& out) const {
  std::vector<int> load;
  loads(s, load);
  out.assign(static_cast<std::size_t>(players()), 0.0);
  for (int i = 0; i < players(); ++i) {
    double c = 0.0;
    for (int r : strategies_[i][s[i]]) c += cost_tables_[r][load[r]];
    out[static_cast<std::size_t>(i)] = c;
  }
}

double rosenthal_potential(const CongestionGame& game, const PureProfile& s) {
  if (!game.unit_weights()) {
    throw WeightedGameError("Rosenthal potential is exact only for unit weights");
  }
  game.check_profile(s);
  std::vector<int> load;
  game.loads(s, load);
  double phi = 0.0;
  for (int r = 0; r < game.resources(); ++r) {
    for (int k = 1; k <= load[r]; ++k) phi += game.resource_cost(r, k);
  }
  return phi;
}

}  // namespace replidyn
