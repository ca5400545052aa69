#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "replidyn/game.hpp"

namespace replidyn {

// Decreasing learning response gamma : [0, M] -> [0, 1]. The affine form is
// (M - x) / M; a user table is interpolated piecewise-linearly and clamped at
// the ends.
struct GammaSpec {
  enum class Form { Affine, Table };

  static GammaSpec affine(double cost_bound);
  static GammaSpec monotone_table(std::vector<std::pair<double, double>> points);

  Form form = Form::Affine;
  double cost_bound = 1.0;                          // M, affine form
  std::vector<std::pair<double, double>> points;    // table form, sorted by x
};

// gamma(cost); throws on cost outside [0, M] for the affine form.
double gamma_eval(const GammaSpec& spec, double cost);

enum class UpdateMode { Plain, Perturbed };

// Parameters of the stochastic update. The O(b) perturbation of the update
// rule is fixed to zero; nonzero bounded perturbations would need
// rejected-move clamping to keep the simplex invariant and are left to
// experiments.
struct DynamicsConfig {
  double b = 0.01;                     // step size, in (0, 1]
  double alpha = 1.0;                  // replicator branch weight, (0, 1]
  UpdateMode mode = UpdateMode::Plain;
  std::vector<double> player_select;   // p; empty means uniform
  GammaSpec gamma;

  static DynamicsConfig plain(double b, GammaSpec gamma);
  static DynamicsConfig perturbed(double b, double alpha, GammaSpec gamma);

  void validate(const Game& game) const;
  std::vector<double> effective_p(int players) const;
};

// One sampled round: everyone draws a pure strategy, one player is selected
// to update and observes a realized cost.
struct RoundRecord {
  PureProfile strategies;
  int updater = 0;
  double realized_cost = 0.0;
  bool replicator_branch = true;  // always true in plain mode
  int uniform_pull = -1;          // strategy j of the uniform branch
};

struct LearnerState {
  MixedProfile q;
  std::uint64_t t = 0;
  Rng rng;

  LearnerState(MixedProfile q0, std::uint64_t seed) : q(std::move(q0)), rng(seed) {}
  LearnerState(MixedProfile q0, Rng rng_in) : q(std::move(q0)), rng(rng_in) {}
};

// Draw order per round, pinned for replayability: strategies in player
// order, then the updating player, then the realized cost, then (perturbed
// mode) the branch and the uniform strategy.
RoundRecord sample_round(LearnerState& state, const Game& game, const DynamicsConfig& config);

// b * gamma(r) * (e_s - q_i); zero for everyone but the selected player.
std::vector<double> replicator_increment(const RoundRecord& round, const std::vector<double>& qi,
                                         const DynamicsConfig& config);

// Replicator branch with probability alpha, otherwise b^2 * (e_j - q_i): the
// uniform-pull F is b * (e_j - q_i), so the state increment carries b^2.
std::vector<double> perturbed_increment(const RoundRecord& round, const std::vector<double>& qi,
                                        const DynamicsConfig& config);

// One round: exactly one player's block changes. Renormalizes the block only
// when floating drift exceeds 1e-12.
void step(LearnerState& state, const Game& game, const DynamicsConfig& config);

struct TrajectorySample {
  std::uint64_t step = 0;
  MixedProfile q;
};
struct Trajectory {
  std::vector<TrajectorySample> samples;
};

// Recorder receives (step, Q) at stride intervals, always including step 0
// and the final step.
using Recorder = std::function<void(std::uint64_t, const MixedProfile&)>;
void run(LearnerState& state, const Game& game, const DynamicsConfig& config, std::uint64_t steps,
         std::uint64_t stride, const Recorder& recorder);
Trajectory run(LearnerState& state, const Game& game, const DynamicsConfig& config,
               std::uint64_t steps, std::uint64_t stride = 1);

}  // namespace replidyn
