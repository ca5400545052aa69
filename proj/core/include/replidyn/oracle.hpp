#pragma once

#include <cstdint>
#include <vector>

#include "replidyn/dynamics.hpp"
#include "replidyn/lyapunov.hpp"
#include "replidyn/meanfield.hpp"

namespace replidyn {

// Exact E[dq | Q]: enumerates every round outcome (pure profile x selected
// player x branch x uniform strategy) and sums probability-weighted
// increments. Needs deterministic costs and the affine gamma, which make
// E[gamma(r) | s] = gamma(c(s)) exact.
Tangent exact_expected_update(const Game& game, const MixedProfile& q,
                              const DynamicsConfig& config, std::size_t cap = kDefaultEnumCap);

// Exact one-step statistics of a candidate Lyapunov function.
//   exact_dF:      E[F(Q + dQ) - F(Q) | Q], F evaluated on every successor.
//   gradient_form: sum_{i,l} dF/dq_{i,l}(Q) E[dq_{i,l} | Q]; equals exact_dF
//                  exactly when F is multiaffine (the dynamics being
//                  elementary stepwise kills every cross term).
//   formula_dF:    the closed-form leading term; |exact - formula| = O(b^2).
struct DriftReport {
  double exact_dF = 0.0;
  double gradient_form = 0.0;
  double formula_dF = 0.0;
  double identity_gap = 0.0;     // |exact_dF - gradient_form|
  double order_gap = 0.0;        // |exact_dF - formula_dF|
  double replicator_part = 0.0;  // branch decomposition of exact_dF
  double uniform_part = 0.0;
  double prob_total = 0.0;       // enumerated outcome mass, 1 within 1e-12
  bool multiaffine_identity_ok = false;
  double b = 0.0;
};
DriftReport exact_one_step_drift(const Game& game, const LyapunovFn& lyapunov,
                                 const MixedProfile& q, const DynamicsConfig& config,
                                 std::size_t cap = kDefaultEnumCap);
DriftReport exact_one_step_drift(const Game& game, const ExpectedPotential& potential,
                                 const MixedProfile& q, const DynamicsConfig& config,
                                 std::size_t cap = kDefaultEnumCap);

// Empirical hitting time of the eps-Nash region over independent trials.
struct HittingTimeResult {
  std::vector<std::uint64_t> taus;  // per trial; max_steps where censored
  int trials = 0;
  int censored = 0;
  bool all_censored = false;
  double mean_tau = 0.0;  // over uncensored trials
  double ci_lo = 0.0;     // bootstrap 95% CI of the mean
  double ci_hi = 0.0;
  double z0 = 0.0;        // F(Q0)
};
HittingTimeResult hitting_time_trials(const Game& game, const ExpectedPotential& potential,
                                      const MixedProfile& q0, double eps,
                                      const DynamicsConfig& config, int trials,
                                      std::uint64_t max_steps, std::uint64_t seed,
                                      int threads = 0, std::size_t cap = kDefaultEnumCap);

// Worst (smallest) exact one-step decrease -E[dF] over sampled interior
// non-eps-Nash profiles; feeds the E[tau] < Z0 / kappa bound. Interior
// sampling keeps clear of corners, where the one-step decrease of the
// perturbed dynamics vanishes.
struct KappaEstimate {
  double kappa = 0.0;
  int usable = 0;
  int sampled = 0;
};
KappaEstimate measure_drift_kappa(const Game& game, const ExpectedPotential& potential,
                                  const DynamicsConfig& config, double eps, int samples,
                                  std::uint64_t seed, double interior_margin = 0.05,
                                  std::size_t cap = kDefaultEnumCap);

// Fraction of trials whose running max of F ever reaches lambda * F(Q0)
// within the horizon. Validates the supermartingale precondition on sampled
// profiles above the starting level first. The Doob bound gives
// fraction <= 1/lambda.
struct EscapeResult {
  int trials = 0;
  int escapes = 0;
  double fraction = 0.0;
  double f0 = 0.0;
  double threshold = 0.0;  // lambda * F(Q0)
  double bound = 0.0;      // 1 / lambda
  double margin3 = 0.0;    // 3 sigma binomial margin at the bound
};
EscapeResult level_escape_probability(const Game& game, const ExpectedPotential& potential,
                                      const MixedProfile& q0, double lambda,
                                      const DynamicsConfig& config, int trials,
                                      std::uint64_t horizon, std::uint64_t seed,
                                      int precheck_samples = 200, int threads = 0,
                                      std::size_t cap = kDefaultEnumCap);

// Mean sup-norm deviation between the interpolated stochastic trajectory on
// rescaled time t = step * b and the RK4 reference of the scaled replicator
// ODE, per step size. With mean_dynamics the sampled update is replaced by
// the exact one-step expectation (a deterministic O(b) discretization of the
// ODE), isolating the bias from the noise.
struct OdeDeviationRow {
  double b = 0.0;
  double mean_sup_dev = 0.0;
  double std_err = 0.0;
  int trials = 0;
};
std::vector<OdeDeviationRow> ode_deviation(const Game& game, const MixedProfile& q0,
                                           const std::vector<double>& b_list, double T,
                                           int trials, std::uint64_t seed,
                                           const DynamicsConfig& proto, double h_ref = 0.005,
                                           bool mean_dynamics = false, int threads = 0,
                                           std::size_t cap = kDefaultEnumCap);

// Least-squares slope of log(y) against log(x); pairs with y below y_floor
// are dropped. Returns NaN when fewer than two usable points remain.
double fit_loglog_slope(const std::vector<std::pair<double, double>>& points,
                        double y_floor = 1e-15);

}  // namespace replidyn
