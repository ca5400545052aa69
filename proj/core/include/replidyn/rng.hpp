#pragma once

#include <cstdint>
#include <vector>

namespace replidyn {

// Deterministic, splittable random stream (xoshiro256++ seeded through
// splitmix64). Unlike the <random> engines, the output sequence is pinned by
// this file alone, so seeded runs replay bit-identically across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  // Seed of the independent stream for one trial of a batch (recorded in run
  // manifests so trials can be replayed individually).
  static std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
    std::uint64_t x = master_seed;
    std::uint64_t a = splitmix64(x);
    std::uint64_t y = trial + 0x9E3779B97F4A7C15ULL;
    std::uint64_t b = splitmix64(y);
    return a ^ (b + 0x632BE59BD9B4E019ULL);
  }

  // Independent stream for one trial of a batch. Trials may then run on any
  // thread without coordinating draws.
  static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial) {
    return Rng(derive_trial_seed(master_seed, trial));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform index in {0, ..., n-1}.
  int next_index(int n) {
    return static_cast<int>((static_cast<unsigned __int128>(next_u64()) *
                             static_cast<unsigned __int128>(n)) >> 64);
  }

  // Draw from a probability vector by CDF inversion; tolerates sums that are
  // off from 1 by floating drift (falls through to the last index).
  int sample_categorical(const std::vector<double>& probs) {
    double u = next_double();
    double acc = 0.0;
    const int n = static_cast<int>(probs.size());
    for (int k = 0; k + 1 < n; ++k) {
      acc += probs[k];
      if (u < acc) return k;
    }
    return n - 1;
  }

  // Uniform in [lo, hi).
  double next_range(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_[4];
};

}  // namespace replidyn
