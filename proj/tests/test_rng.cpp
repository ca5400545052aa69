#include <doctest.h>

#include <cmath>
#include <set>

#include "replidyn/rng.hpp"

using namespace replidyn;

TEST_CASE("identical seeds give identical streams") {
  Rng a(42), b(42);
  for (int k = 0; k < 1000; ++k) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("trial streams are distinct and reproducible") {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const std::uint64_t first = Rng::for_trial(7, trial).next_u64();
    CHECK(Rng::for_trial(7, trial).next_u64() == first);
    CHECK(Rng(Rng::derive_trial_seed(7, trial)).next_u64() == first);
    firsts.insert(first);
  }
  CHECK(firsts.size() == 100);
}

TEST_CASE("doubles live in [0,1) with a sane mean") {
  Rng rng(123);
  double sum = 0.0;
  const int n = 100000;
  for (int k = 0; k < n; ++k) {
    const double u = rng.next_double();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.005);
}

TEST_CASE("next_index is uniform enough") {
  Rng rng(9);
  int counts[5] = {0, 0, 0, 0, 0};
  const int n = 100000;
  for (int k = 0; k < n; ++k) ++counts[rng.next_index(5)];
  for (int c : counts) {
    CHECK(std::abs(c - n / 5) < 5 * std::sqrt(n * 0.2 * 0.8));
  }
}

TEST_CASE("categorical sampling tracks the probability vector") {
  Rng rng(77);
  const std::vector<double> probs = {0.1, 0.6, 0.3};
  int counts[3] = {0, 0, 0};
  const int n = 200000;
  for (int k = 0; k < n; ++k) ++counts[rng.sample_categorical(probs)];
  for (int j = 0; j < 3; ++j) {
    const double freq = static_cast<double>(counts[j]) / n;
    const double sigma = std::sqrt(probs[j] * (1 - probs[j]) / n);
    CHECK(std::abs(freq - probs[j]) < 4 * sigma);
  }
  // Degenerate vector always lands on the unit entry.
  const std::vector<double> pure = {0.0, 1.0, 0.0};
  for (int k = 0; k < 100; ++k) CHECK(rng.sample_categorical(pure) == 1);
}
