#include "replidyn/bundled_games.hpp"

#include "replidyn/errors.hpp"

namespace replidyn {

CongestionGame make_lb2() {
  return CongestionGame::load_balancing(2, 2,
                                        {{0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}},
                                        /*cost_bound=*/2.0);
}

CongestionGame make_congestion3() {
  std::vector<std::vector<std::vector<int>>> strategies = {
      {{0}, {1}},
      {{0}, {1}},
      {{0}, {1}, {0, 1}},
  };
  std::vector<std::vector<double>> tables = {
      {0.0, 1.0, 2.0, 3.0},
      {0.0, 2.0, 3.0, 4.0},
  };
  return CongestionGame(2, std::move(strategies), std::move(tables), /*cost_bound=*/8.0);
}

TaskAllocationGame make_taskalloc4() {
  return TaskAllocationGame(2, {1.0, 2.0, 4.0, 8.0}, SchedulingPolicy::Spt,
                            /*cost_bound=*/15.0);
}

namespace {
// Potential table of the 2x3 game, row-major with player 2 fastest.
const std::vector<double> kNormform23Phi = {0.2, 1.1, 0.5, 0.9, 0.3, 1.4};
}  // namespace

NormalFormGame make_normform23() {
  // c_i = phi + d_i(opponent): d_1 over player 2's strategy, d_2 over
  // player 1's, which makes phi an exact potential by construction.
  const std::vector<double> d1 = {0.4, 0.0, 0.7};
  const std::vector<double> d2 = {0.1, 0.6};
  std::vector<double> c1(6), c2(6);
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 3; ++s2) {
      const int idx = s1 * 3 + s2;
      c1[idx] = kNormform23Phi[idx] + d1[s2];
      c2[idx] = kNormform23Phi[idx] + d2[s1];
    }
  }
  return NormalFormGame({2, 3}, {std::move(c1), std::move(c2)}, /*cost_bound=*/2.5);
}

PotentialSpec normform23_potential() { return PotentialSpec::table(kNormform23Phi); }

std::unique_ptr<Game> make_bundled(const std::string& name) {
  if (name == "lb2") return std::make_unique<CongestionGame>(make_lb2());
  if (name == "congestion3") return std::make_unique<CongestionGame>(make_congestion3());
  if (name == "taskalloc4") return std::make_unique<TaskAllocationGame>(make_taskalloc4());
  if (name == "normform23") return std::make_unique<NormalFormGame>(make_normform23());
  throw ConfigError("unknown bundled game '" + name + "'");
}

PotentialSpec bundled_potential(const std::string& name) {
  if (name == "lb2" || name == "congestion3") return PotentialSpec::rosenthal();
  if (name == "taskalloc4") return PotentialSpec::lex_task_allocation();
  if (name == "normform23") return normform23_potential();
  throw ConfigError("no bundled potential for '" + name + "'");
}

}  // namespace replidyn
