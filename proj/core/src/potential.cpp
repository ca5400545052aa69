#include "replidyn/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace replidyn {
namespace {

const CongestionGame& require_congestion(const Game& game) {
  const auto* cg = dynamic_cast<const CongestionGame*>(&game);
  if (!cg) throw GameError("Rosenthal potential needs a congestion game");
  return *cg;
}

const TaskAllocationGame& require_taskalloc(const Game& game) {
  const auto* tg = dynamic_cast<const TaskAllocationGame*>(&game);
  if (!tg) throw GameError("lexicographic potential needs a task-allocation game");
  return *tg;
}

// P[load >= k] terms of independent unit-weight users. usage[i] is player i's
// probability of touching the resource (0/1 when pinned).
double rosenthal_resource_term(const CongestionGame& game, int resource,
                               const std::vector<double>& usage) {
  const int n = static_cast<int>(usage.size());
  std::vector<double> pmf(1, 1.0);
  pmf.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) {
    const double u = usage[static_cast<std::size_t>(i)];
    pmf.push_back(0.0);
    for (int k = static_cast<int>(pmf.size()) - 1; k >= 1; --k) {
      pmf[k] = pmf[k] * (1.0 - u) + pmf[k - 1] * u;
    }
    pmf[0] *= (1.0 - u);
  }
  double term = 0.0;
  double tail = 0.0;
  for (int k = static_cast<int>(pmf.size()) - 1; k >= 1; --k) {
    tail += pmf[static_cast<std::size_t>(k)];  // P[load >= k]
    term += game.resource_cost(resource, k) * tail;
  }
  return term;
}

double rosenthal_expectation(const CongestionGame& game, const MixedProfile& q, int pin_player,
                             int pin_strategy) {
  if (!game.unit_weights()) {
    throw WeightedGameError("Rosenthal potential is exact only for unit weights");
  }
  const int n = game.players();
  double total = 0.0;
  std::vector<double> usage(static_cast<std::size_t>(n));
  for (int r = 0; r < game.resources(); ++r) {
    for (int i = 0; i < n; ++i) {
      if (i == pin_player) {
        const auto& subset = game.strategy_resources(i, pin_strategy);
        usage[i] = std::binary_search(subset.begin(), subset.end(), r) ? 1.0 : 0.0;
        continue;
      }
      double u = 0.0;
      for (int l = 0; l < game.strategies(i); ++l) {
        const auto& subset = game.strategy_resources(i, l);
        if (std::binary_search(subset.begin(), subset.end(), r)) u += q.at(i, l);
      }
      usage[i] = u;
    }
    total += rosenthal_resource_term(game, r, usage);
  }
  return total;
}

double enumerated_expectation(const Game& game, const PotentialSpec& phi, const MixedProfile& q,
                              std::size_t cap, int pin_player, int pin_strategy) {
  check_enum_cap(game.strategy_counts(), cap);
  double total = 0.0;
  PureProfile pinned;
  for_each_profile(game.strategy_counts(), [&](const PureProfile& s) {
    if (pin_player >= 0 && s[pin_player] != pin_strategy) return;
    double w = 1.0;
    for (int j = 0; j < game.players(); ++j) {
      if (j != pin_player) w *= q.at(j, s[j]);
    }
    if (w != 0.0) total += w * phi.value(game, s);
  });
  (void)pinned;
  return total;
}

double expectation_impl(const Game& game, const PotentialSpec& phi, const MixedProfile& q,
                        std::size_t cap, int pin_player, int pin_strategy) {
  if (phi.source() == PotentialSpec::Source::Rosenthal) {
    return rosenthal_expectation(require_congestion(game), q, pin_player, pin_strategy);
  }
  return enumerated_expectation(game, phi, q, cap, pin_player, pin_strategy);
}

}  // namespace

PotentialSpec PotentialSpec::table(std::vector<double> values) {
  return PotentialSpec(Source::Table, std::move(values));
}
PotentialSpec PotentialSpec::rosenthal() { return PotentialSpec(Source::Rosenthal, {}); }
PotentialSpec PotentialSpec::lex_task_allocation() {
  return PotentialSpec(Source::LexTaskAlloc, {});
}

double PotentialSpec::value(const Game& game, const PureProfile& s) const {
  switch (source_) {
    case Source::Table: {
      const std::size_t idx = profile_index(game.strategy_counts(), s);
      if (idx >= values_.size()) throw GameError("potential table too small for this game");
      return values_[idx];
    }
    case Source::Rosenthal:
      return rosenthal_potential(require_congestion(game), s);
    case Source::LexTaskAlloc:
      return lexicographic_potential(require_taskalloc(game), s);
  }
  throw GameError("unknown potential source");
}

double lexicographic_potential(const TaskAllocationGame& game, const PureProfile& s) {
  game.check_profile(s);
  // Completion times in scheduling-priority order, encoded in base
  // K = 1 + total weight with the highest priority at the highest power.
  // A task's completion never depends on lower-priority tasks, and a strict
  // improvement strictly lowers the mover's own component while leaving all
  // higher-priority components unchanged, so every improving deviation
  // strictly decreases this value (for SPT and LPT alike, ties included).
  const double base = 1.0 + game.total_weight();
  double phi = 0.0;
  for (int player : game.priority_order()) phi = phi * base + game.pure_cost(player, s);
  return phi;
}

double potential_expectation(const Game& game, const PotentialSpec& phi, const MixedProfile& q,
                             std::size_t cap) {
  return expectation_impl(game, phi, q, cap, -1, -1);
}

double gradient_component(const Game& game, const PotentialSpec& phi, int player, int strategy,
                          const MixedProfile& q, std::size_t cap) {
  return expectation_impl(game, phi, q, cap, player, strategy);
}

ExpectedPotential::ExpectedPotential(const Game& game, PotentialSpec phi, std::size_t cap)
    : game_(game), phi_(std::move(phi)), cap_(cap) {
  check_enum_cap(game.strategy_counts(), cap_);
  double min_phi = std::numeric_limits<double>::infinity();
  for_each_profile(game.strategy_counts(), [&](const PureProfile& s) {
    min_phi = std::min(min_phi, phi_.value(game_, s));
  });
  offset_ = min_phi;
}

double ExpectedPotential::value(const MixedProfile& q) const {
  return expectation_impl(game_, phi_, q, cap_, -1, -1) - offset_;
}

double ExpectedPotential::pinned(int player, int strategy, const MixedProfile& q) const {
  return expectation_impl(game_, phi_, q, cap_, player, strategy) - offset_;
}

std::vector<std::vector<double>> ExpectedPotential::pinned_all(const MixedProfile& q) const {
  const auto& counts = game_.strategy_counts();
  const int n = game_.players();
  std::vector<std::vector<double>> out(static_cast<std::size_t>(n));

  if (phi_.source() == PotentialSpec::Source::Rosenthal) {
    for (int i = 0; i < n; ++i) {
      out[i].resize(static_cast<std::size_t>(counts[i]));
      for (int l = 0; l < counts[i]; ++l) out[i][l] = pinned(i, l, q);
    }
    return out;
  }

  // One enumeration pass, prefix/suffix products excluding each player.
  for (int i = 0; i < n; ++i) out[i].assign(static_cast<std::size_t>(counts[i]), 0.0);
  std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 1.0);
  std::vector<double> suffix(static_cast<std::size_t>(n) + 1, 1.0);
  for_each_profile(counts, [&](const PureProfile& s) {
    for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] * q.at(i, s[i]);
    suffix[n] = 1.0;
    for (int i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] * q.at(i, s[i]);
    const double v = phi_.value(game_, s);
    for (int i = 0; i < n; ++i) {
      const double w = prefix[i] * suffix[i + 1];
      if (w != 0.0) out[i][s[i]] += w * v;
    }
  });
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < counts[i]; ++l) out[i][l] -= offset_;
  }
  return out;
}

LyapunovFn ExpectedPotential::as_lyapunov() const {
  LyapunovFn fn;
  fn.value = [this](const MixedProfile& q) { return value(q); };
  fn.pinned_all = [this](const MixedProfile& q) { return pinned_all(q); };
  fn.multiaffine = true;
  return fn;
}

OrdinalReport verify_ordinal_potential(const Game& game, const PotentialSpec& phi,
                                       std::size_t cap, double tol) {
  if (!game.has_exact_costs()) {
    throw UndefinedCostError("potential verification needs an exact cost oracle");
  }
  const auto& counts = game.strategy_counts();
  check_enum_cap(counts, cap);

  OrdinalReport report;
  PureProfile deviated;
  for_each_profile(counts, [&](const PureProfile& s) {
    const double phi_s = phi.value(game, s);
    for (int i = 0; i < game.players(); ++i) {
      const double cost_s = game.pure_cost(i, s);
      deviated = s;
      for (int l = 0; l < counts[i]; ++l) {
        if (l == s[i]) continue;
        deviated[i] = l;
        ++report.deviations_checked;
        const double dc = cost_s - game.pure_cost(i, deviated);      // > 0: improvement
        const double dphi = phi_s - phi.value(game, deviated);       // > 0: potential drop
        const int sc = dc > tol ? 1 : (dc < -tol ? -1 : 0);
        const int sp = dphi > tol ? 1 : (dphi < -tol ? -1 : 0);
        if (sc != sp && report.is_ordinal) {
          report.is_ordinal = false;
          report.witness = DeviationWitness{s, i, l, dc, dphi};
        }
        if (sc > 0 && sp <= 0 && report.improvement_consistent) {
          report.improvement_consistent = false;
          if (!report.witness) report.witness = DeviationWitness{s, i, l, dc, dphi};
        }
        if (std::abs(dc - dphi) > tol && report.is_exact) {
          report.is_exact = false;
          report.exactness_witness = DeviationWitness{s, i, l, dc, dphi};
        }
      }
    }
  });
  return report;
}

}  // namespace replidyn
