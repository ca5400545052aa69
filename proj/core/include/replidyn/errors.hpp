#pragma once

#include <stdexcept>
#include <string>

namespace replidyn {

struct GameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The game exposes only a sampler, no exact expected-cost form.
struct UndefinedCostError : GameError {
  using GameError::GameError;
};

// An exhaustive enumeration was requested above the configured profile cap.
struct CapExceededError : GameError {
  using GameError::GameError;
};

// Rosenthal potential requested on a weighted congestion game.
struct WeightedGameError : GameError {
  using GameError::GameError;
};

// Exact one-step oracles need deterministic costs and an affine gamma.
struct ExactOracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An ODE step produced an entry below -1e-12.
struct StepUnstableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The supermartingale precondition of the level-escape experiment failed.
struct DriftPreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace replidyn
