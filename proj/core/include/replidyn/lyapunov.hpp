#pragma once

#include <optional>
#include <string>
#include <vector>

#include "replidyn/dynamics.hpp"
#include "replidyn/game_ops.hpp"
#include "replidyn/potential.hpp"

namespace replidyn {

// Closed-form leading drift term of F = E[phi] under the stochastic update:
//   b sum_{i,l} p_i dF/dq_{i,l}(Q) G_{i,l}(Q)
//     = -(b alpha / 2M) sum_i p_i sum_{l != l'} q_{i,l} q_{i,l'}
//         (F(e_l,Q_-i) - F(e_l',Q_-i)) (cbar_i(e_l) - cbar_i(e_l')),
// ordered pairs. For exact potential games the pinned differences agree and
// the sum is one of squares. Requires an affine gamma.
double analytic_drift(const Game& game, const ExpectedPotential& potential, const MixedProfile& q,
                      const DynamicsConfig& config, std::size_t cap = kDefaultEnumCap);
double analytic_drift(const Game& game, const PotentialSpec& phi, const MixedProfile& q,
                      const DynamicsConfig& config, std::size_t cap = kDefaultEnumCap);

// Same formula from precomputed pinned values (shared with the drift oracle).
double analytic_drift_from_pinned(const std::vector<std::vector<double>>& f_pinned,
                                  const PinnedCosts& costs, const MixedProfile& q,
                                  const std::vector<double>& p, double b, double alpha,
                                  double cost_bound);

// cbar_i(e_l, Q_-i) >= (1 - eps) cbar_i(q_i, Q_-i) for every player and pure
// strategy.
bool is_epsilon_nash(const Game& game, const MixedProfile& q, double eps,
                     std::size_t cap = kDefaultEnumCap);

// Structure checks of a continuous potential:
//  - gradient identity, pinned-difference form: for all i, l, l',
//      (F(e_l,Q_-i) - F(e_l',Q_-i)) == (cbar_i(e_l) - cbar_i(e_l')),
//    tolerance 1e-8. The plain identity dF/dq = cbar holds only up to a
//    per-player offset that is invisible on the simplex.
//  - externality symmetry by central finite differences (delta 1e-5,
//    tolerance 1e-4), in two readings: the ambient partial-derivative
//    symmetry (holds for anonymous two-player games) and the simplex-tangent
//    double-difference symmetry, the correct closedness condition on K.
struct ContinuousPotentialReport {
  bool gradient_ok = true;
  double gradient_max_err = 0.0;
  std::string gradient_witness;

  bool symmetry_tangent_ok = true;
  double symmetry_tangent_max_err = 0.0;
  std::string symmetry_witness;

  bool symmetry_ambient_ok = true;  // informational
  double symmetry_ambient_max_err = 0.0;

  int profiles_checked = 0;
};
ContinuousPotentialReport check_continuous_potential(const Game& game, const PotentialSpec& phi,
                                                     int samples, std::uint64_t seed,
                                                     std::size_t cap = kDefaultEnumCap);

// Line integral of the cost field along the straight path z -> Q (composite
// midpoint rule). Path velocities are tangent to K, so for exact potential
// games the value is F(Q) - F(z) independent of the path. A quick tangent
// symmetry spot-check sets `symmetry_warning` when path dependence is
// expected.
struct PathIntegralResult {
  double value = 0.0;
  bool symmetry_warning = false;
};
PathIntegralResult potential_from_path_integral(const Game& game, const MixedProfile& z,
                                                const MixedProfile& q, int segments = 1024,
                                                std::size_t cap = kDefaultEnumCap,
                                                bool check_symmetry = true);

// Same quadrature along an explicit waypoint chain (used for the
// path-independence checks).
double path_integral_via(const Game& game, const std::vector<MixedProfile>& waypoints,
                         int segments_per_leg = 1024, std::size_t cap = kDefaultEnumCap);

}  // namespace replidyn
