#include "replidyn/profile.hpp"

#include <cmath>
#include <string>

namespace replidyn {

std::size_t profile_count(const std::vector<int>& strategy_counts, std::size_t cap) {
  std::size_t total = 1;
  for (int m : strategy_counts) {
    if (m <= 0) throw GameError("strategy count must be positive");
    if (total > (cap + 1) / static_cast<std::size_t>(m)) return cap + 1;
    total *= static_cast<std::size_t>(m);
  }
  return total;
}

void check_enum_cap(const std::vector<int>& strategy_counts, std::size_t cap) {
  if (profile_count(strategy_counts, cap) > cap) {
    throw CapExceededError("profile space exceeds enumeration cap of " + std::to_string(cap));
  }
}

std::size_t profile_index(const std::vector<int>& strategy_counts, const PureProfile& s) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < strategy_counts.size(); ++i) {
    idx = idx * static_cast<std::size_t>(strategy_counts[i]) + static_cast<std::size_t>(s[i]);
  }
  return idx;
}

MixedProfile MixedProfile::uniform(const std::vector<int>& strategy_counts) {
  std::vector<std::vector<double>> blocks;
  blocks.reserve(strategy_counts.size());
  for (int m : strategy_counts) {
    blocks.emplace_back(static_cast<std::size_t>(m), 1.0 / static_cast<double>(m));
  }
  return MixedProfile(std::move(blocks));
}

MixedProfile MixedProfile::pure(const std::vector<int>& strategy_counts, const PureProfile& s) {
  std::vector<std::vector<double>> blocks;
  blocks.reserve(strategy_counts.size());
  for (std::size_t i = 0; i < strategy_counts.size(); ++i) {
    std::vector<double> block(static_cast<std::size_t>(strategy_counts[i]), 0.0);
    block[static_cast<std::size_t>(s[i])] = 1.0;
    blocks.push_back(std::move(block));
  }
  return MixedProfile(std::move(blocks));
}

std::vector<int> MixedProfile::strategy_counts() const {
  std::vector<int> counts(q_.size());
  for (std::size_t i = 0; i < q_.size(); ++i) counts[i] = static_cast<int>(q_[i].size());
  return counts;
}

bool MixedProfile::simplex_valid(double tol) const {
  for (const auto& block : q_) {
    double sum = 0.0;
    for (double v : block) {
      if (v < -tol || v > 1.0 + tol) return false;
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

void MixedProfile::renormalize(double drift_tol) {
  for (auto& block : q_) {
    double sum = 0.0;
    for (double v : block) sum += v;
    if (std::abs(sum - 1.0) > drift_tol && sum > 0.0) {
      for (double& v : block) v /= sum;
    }
  }
}

double MixedProfile::l_inf_distance(const MixedProfile& other) const {
  double d = 0.0;
  for (int i = 0; i < players(); ++i) {
    for (int l = 0; l < strategies(i); ++l) {
      d = std::max(d, std::abs(q_[i][l] - other.q_[i][l]));
    }
  }
  return d;
}

std::vector<double> MixedProfile::flatten() const {
  std::vector<double> flat;
  for (const auto& block : q_) flat.insert(flat.end(), block.begin(), block.end());
  return flat;
}

double profile_probability(const MixedProfile& q, const PureProfile& s) {
  double p = 1.0;
  for (int i = 0; i < q.players(); ++i) p *= q.at(i, s[i]);
  return p;
}

}  // namespace replidyn
