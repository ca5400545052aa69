#pragma once

#include <vector>

#include "replidyn/game.hpp"

namespace replidyn {

// Congestion game over shared resources: a pure strategy is a subset of
// resources, the cost is the sum of the chosen resources' costs at their
// loads. Weights are positive integers (unit by default), so loads index
// directly into the nondecreasing per-resource cost tables. Load-balancing
// games are the singleton-strategy special case.
class CongestionGame : public Game {
 public:
  // strategies[i][l] = sorted list of 0-based resource ids.
  // cost_tables[r][k] = C_r(k) for integer load k; entry 0 must be 0.
  CongestionGame(int resources, std::vector<std::vector<std::vector<int>>> strategies,
                 std::vector<std::vector<double>> cost_tables, double cost_bound,
                 std::vector<int> weights = {});

  // n players with singleton strategies over every machine, one shared or
  // per-machine cost table.
  static CongestionGame load_balancing(int players, int machines,
                                       std::vector<std::vector<double>> machine_tables,
                                       double cost_bound, std::vector<int> weights = {});

  double pure_cost(int player, const PureProfile& s) const override;
  void pure_costs(const PureProfile& s, std::vector<double>& out) const override;

  int resources() const { return resources_; }
  bool unit_weights() const { return unit_weights_; }
  const std::vector<int>& weights() const { return weights_; }
  const std::vector<int>& strategy_resources(int player, int strategy) const {
    return strategies_[player][strategy];
  }
  double resource_cost(int resource, int load) const { return cost_tables_[resource][load]; }
  int max_load() const { return total_weight_; }

  void loads(const PureProfile& s, std::vector<int>& out) const;

 private:
  int resources_;
  std::vector<std::vector<std::vector<int>>> strategies_;
  std::vector<std::vector<double>> cost_tables_;  // index = integer load
  std::vector<int> weights_;
  int total_weight_ = 0;
  bool unit_weights_ = true;

  static std::vector<int> counts_of(const std::vector<std::vector<std::vector<int>>>& strats);
};

// Rosenthal's exact potential, sum over resources of the cost-table prefix up
// to the realized load. Rejects weighted games.
double rosenthal_potential(const CongestionGame& game, const PureProfile& s);

}  // namespace replidyn
