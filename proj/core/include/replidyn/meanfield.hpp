#pragma once

#include <functional>
#include <vector>

#include "replidyn/game.hpp"
#include "replidyn/game_ops.hpp"

namespace replidyn {

// Tangent field on the product simplex; every evaluation is checked for
// per-player tangency (block sums within 1e-12 of zero).
class VectorField {
 public:
  using Eval = std::function<Tangent(const MixedProfile&)>;
  explicit VectorField(Eval eval) : eval_(std::move(eval)) {}

  Tangent operator()(const MixedProfile& q) const;

 private:
  Eval eval_;
};

// Multipopulation replicator right-hand side
//   dq_{i,l}/dt = -p_i q_{i,l} (cbar_i(e_l, Q_-i) - cbar_i(q_i, Q_-i)) / M,
// the 1/M factor present when gamma_scaled is set, which matches the affine-
// gamma stochastic algorithm under the rescaling t = step * b.
Tangent replicator_rhs(const Game& game, const MixedProfile& q, const std::vector<double>& p,
                       bool gamma_scaled = true, std::size_t cap = kDefaultEnumCap);

VectorField replicator_field(const Game& game, std::vector<double> p, bool gamma_scaled = true,
                             std::size_t cap = kDefaultEnumCap);

// Classical fixed-step RK4. Entries below -1e-12 raise StepUnstableError;
// smaller negatives are clamped, and blocks are renormalized when their sum
// drifts by more than 1e-12.
MixedProfile rk4_step(const VectorField& field, const MixedProfile& q, double h);

struct OdeSolution {
  std::vector<double> times;
  std::vector<MixedProfile> states;
  double h = 0.0;
  double final_residual = 0.0;  // max-norm of the field at the final state
};

// Integrates to time T (samples every `stride` steps plus the endpoint).
// When residual_stop > 0 integration ends early once the field max-norm
// falls below it.
OdeSolution integrate(const VectorField& field, MixedProfile q0, double T, double h,
                      std::uint64_t stride = 1, double residual_stop = 0.0);

struct Classification {
  bool stationary = false;
  bool nash = false;
  bool stationary_non_nash = false;
  bool epsilon_nash = false;
  double epsilon = 0.0;
  double field_norm = 0.0;
};

// Stationarity from the field max-norm; Nash from pinned expected costs
// (cost comparisons at 1e-12); flags the stationary-non-Nash combination.
Classification classify_point(const VectorField& field, const Game& game, const MixedProfile& q,
                              double tol = 1e-9, double epsilon = 0.0,
                              std::size_t cap = kDefaultEnumCap);

double tangent_max_norm(const Tangent& t);

}  // namespace replidyn
