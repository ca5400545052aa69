#pragma once

#include <vector>

#include "replidyn/game.hpp"

namespace replidyn {

enum class SchedulingPolicy { Spt, Lpt };

// Tasks pick one of m identical machines; each machine schedules its tasks
// without preemption in SPT (increasing weight) or LPT (decreasing weight)
// order, ties broken by player index. A player's cost is its completion time:
// the summed weights of co-assigned tasks scheduled no later than itself,
// including its own.
class TaskAllocationGame : public Game {
 public:
  TaskAllocationGame(int machines, std::vector<double> weights, SchedulingPolicy policy,
                     double cost_bound);

  double pure_cost(int player, const PureProfile& s) const override;

  int machines() const { return machines_; }
  SchedulingPolicy policy() const { return policy_; }
  const std::vector<double>& weights() const { return weights_; }
  double total_weight() const { return total_weight_; }

  // True when task j runs before task i (or j == i) on a shared machine.
  bool scheduled_no_later(int j, int i) const;

  // Players in scheduling-priority order: SPT by increasing weight, LPT by
  // decreasing weight, ties by player index. A task's completion time never
  // depends on lower-priority tasks.
  std::vector<int> priority_order() const;

 private:
  int machines_;
  std::vector<double> weights_;
  SchedulingPolicy policy_;
  double total_weight_ = 0.0;
};

}  // namespace replidyn
