#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "replidyn/congestion_game.hpp"
#include "replidyn/game.hpp"
#include "replidyn/task_allocation_game.hpp"

namespace replidyn {

// Pure-strategy potential: an explicit profile-indexed table, Rosenthal's
// structural form for unit-weight congestion games, or the lexicographic
// completion-time encoding for task-allocation games.
class PotentialSpec {
 public:
  enum class Source { Table, Rosenthal, LexTaskAlloc };

  static PotentialSpec table(std::vector<double> values);
  static PotentialSpec rosenthal();
  static PotentialSpec lex_task_allocation();

  Source source() const { return source_; }
  const std::vector<double>& table_values() const { return values_; }

  // phi(s); validates that the source matches the game family.
  double value(const Game& game, const PureProfile& s) const;

 private:
  PotentialSpec(Source source, std::vector<double> values)
      : source_(source), values_(std::move(values)) {}
  Source source_;
  std::vector<double> values_;
};

// Sorted completion-time vector of s encoded in base K = 1 + total weight,
// smallest completion time at the highest power; numeric order matches
// lexicographic order of the increasingly sorted cost vectors.
double lexicographic_potential(const TaskAllocationGame& game, const PureProfile& s);

// Raw E[phi(S)] with S ~ Q. Rosenthal sources decompose over resources and
// need no profile enumeration.
double potential_expectation(const Game& game, const PotentialSpec& phi, const MixedProfile& q,
                             std::size_t cap = kDefaultEnumCap);

// dF/dq_{i,l}(Q) = F(e_l, Q_-i): the expectation with player i pinned to l.
double gradient_component(const Game& game, const PotentialSpec& phi, int player, int strategy,
                          const MixedProfile& q, std::size_t cap = kDefaultEnumCap);

// Multiaffine Lyapunov function interface used by the drift machinery; tests
// inject deliberately broken instances through it.
struct LyapunovFn {
  std::function<double(const MixedProfile&)> value;
  std::function<std::vector<std::vector<double>>(const MixedProfile&)> pinned_all;
  bool multiaffine = true;
};

// F(Q) = E[phi(Q)] - min_s phi(s), the nonnegative multiaffine Lyapunov
// function of a potential game. Precomputes the offset at construction.
class ExpectedPotential {
 public:
  ExpectedPotential(const Game& game, PotentialSpec phi, std::size_t cap = kDefaultEnumCap);

  double raw(const PureProfile& s) const { return phi_.value(game_, s); }
  double value(const MixedProfile& q) const;
  double pinned(int player, int strategy, const MixedProfile& q) const;
  std::vector<std::vector<double>> pinned_all(const MixedProfile& q) const;

  double offset() const { return offset_; }
  const Game& game() const { return game_; }
  const PotentialSpec& spec() const { return phi_; }
  LyapunovFn as_lyapunov() const;

 private:
  const Game& game_;
  PotentialSpec phi_;
  std::size_t cap_;
  double offset_;
};

// Exhaustive unilateral-deviation check of a pure-strategy potential.
//   is_exact:   potential differences equal cost differences everywhere.
//   is_ordinal: strict sign equivalence of the two differences everywhere
//               (indifferent moves must leave phi unchanged).
//   improvement_consistent: every strictly improving deviation strictly
//               decreases phi (one-directional; holds for SPT/LPT task
//               allocation where the strict equivalence provably cannot).
struct DeviationWitness {
  PureProfile from;
  int player = 0;
  int to = 0;
  double cost_delta = 0.0;
  double potential_delta = 0.0;
};
struct OrdinalReport {
  bool is_ordinal = true;
  bool is_exact = true;
  bool improvement_consistent = true;
  std::optional<DeviationWitness> witness;            // first sign violation
  std::optional<DeviationWitness> exactness_witness;  // first difference mismatch
  std::size_t deviations_checked = 0;
};
OrdinalReport verify_ordinal_potential(const Game& game, const PotentialSpec& phi,
                                       std::size_t cap = kDefaultEnumCap, double tol = 1e-12);

}  // namespace replidyn
