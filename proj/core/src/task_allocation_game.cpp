#include "replidyn/task_allocation_game.hpp"

#include <algorithm>

namespace replidyn {

TaskAllocationGame::TaskAllocationGame(int machines, std::vector<double> weights,
                                       SchedulingPolicy policy, double cost_bound)
    : Game(std::vector<int>(weights.size(), machines), cost_bound),
      machines_(machines),
      weights_(std::move(weights)),
      policy_(policy) {
  if (machines_ <= 0) throw GameError("need at least one machine");
  for (double w : weights_) {
    if (!(w > 0.0)) throw GameError("task weights must be positive");
    total_weight_ += w;
  }
  if (total_weight_ > cost_bound) {
    throw GameError("cost bound M must be at least the total weight");
  }
}

bool TaskAllocationGame::scheduled_no_later(int j, int i) const {
  if (j == i) return true;
  const double wj = weights_[j];
  const double wi = weights_[i];
  if (policy_ == SchedulingPolicy::Spt) {
    return wj < wi || (wj == wi && j < i);
  }
  return wj > wi || (wj == wi && j < i);
}

double TaskAllocationGame::pure_cost(int player, const PureProfile& s) const {
  double completion = 0.0;
  for (int j = 0; j < players(); ++j) {
    if (s[j] == s[player] && scheduled_no_later(j, player)) completion += weights_[j];
  }
  return completion;
}

std::vector<int> TaskAllocationGame::priority_order() const {
  std::vector<int> order(static_cast<std::size_t>(players()));
  for (int i = 0; i < players(); ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [this](int a, int b) { return a != b && scheduled_no_later(a, b); });
  return order;
}

}  // namespace replidyn
