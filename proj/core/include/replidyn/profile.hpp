#pragma once

#include <cstddef>
#include <vector>

#include "replidyn/errors.hpp"

namespace replidyn {

// One pure strategy index per player, 0-based.
using PureProfile = std::vector<int>;

// Per-player tangent blocks; each block sums to zero for a valid field value.
using Tangent = std::vector<std::vector<double>>;

// Default cap on exhaustive pure-profile enumerations.
inline constexpr std::size_t kDefaultEnumCap = 1'000'000;

// Number of pure profiles, saturating at `cap + 1` to avoid overflow.
std::size_t profile_count(const std::vector<int>& strategy_counts, std::size_t cap = kDefaultEnumCap);

// Throws CapExceededError when the profile space is larger than `cap`.
void check_enum_cap(const std::vector<int>& strategy_counts, std::size_t cap);

// Row-major profile index: the last player varies fastest.
std::size_t profile_index(const std::vector<int>& strategy_counts, const PureProfile& s);

// Visits every pure profile in row-major order. Callable gets the profile by
// const reference; it must not retain it across calls.
template <typename Fn>
void for_each_profile(const std::vector<int>& strategy_counts, Fn&& fn) {
  const int n = static_cast<int>(strategy_counts.size());
  PureProfile s(n, 0);
  for (;;) {
    fn(static_cast<const PureProfile&>(s));
    int i = n - 1;
    while (i >= 0) {
      if (++s[i] < strategy_counts[i]) break;
      s[i] = 0;
      --i;
    }
    if (i < 0) return;
  }
}

// Full mixed state Q: one probability vector per player.
class MixedProfile {
 public:
  MixedProfile() = default;
  explicit MixedProfile(std::vector<std::vector<double>> blocks) : q_(std::move(blocks)) {}

  static MixedProfile uniform(const std::vector<int>& strategy_counts);
  static MixedProfile pure(const std::vector<int>& strategy_counts, const PureProfile& s);

  int players() const { return static_cast<int>(q_.size()); }
  int strategies(int player) const { return static_cast<int>(q_[player].size()); }
  std::vector<int> strategy_counts() const;

  const std::vector<double>& block(int player) const { return q_[player]; }
  std::vector<double>& block(int player) { return q_[player]; }
  double at(int player, int strategy) const { return q_[player][strategy]; }
  double& at(int player, int strategy) { return q_[player][strategy]; }

  // Entries in [0 - tol, 1 + tol] and per-player sums within tol of 1.
  bool simplex_valid(double tol = 1e-9) const;

  // Per player: divide by the exact sum when |sum - 1| exceeds drift_tol.
  void renormalize(double drift_tol = 1e-12);

  double l_inf_distance(const MixedProfile& other) const;

  // Player-major flattening q_{1,1}, ..., q_{1,m_1}, q_{2,1}, ...
  std::vector<double> flatten() const;

  bool operator==(const MixedProfile&) const = default;

 private:
  std::vector<std::vector<double>> q_;
};

// Probability of pure profile s under Q (product across players).
double profile_probability(const MixedProfile& q, const PureProfile& s);

}  // namespace replidyn
