#pragma once

#include <memory>
#include <optional>
#include <string>

#include "replidyn/congestion_game.hpp"
#include "replidyn/normal_form_game.hpp"
#include "replidyn/potential.hpp"
#include "replidyn/task_allocation_game.hpp"
#include "replidyn/textconfig.hpp"

namespace replidyn {

// Game definition files (see docs/formats.md):
//
//   [game]
//   kind = normalform | congestion | loadbalancing | taskalloc
//   players = n
//   cost_bound = M
//   ... kind-specific keys ...
//
//   [costs]      cost tables (repeated `player =` or `machine =` rows)
//   [strategies] congestion resource subsets, strategies separated by ';'
//   [potential]  optional: source = rosenthal | lexicographic | table
//
// Resource and strategy indices are 1-based in files, 0-based in memory.
struct LoadedGame {
  std::unique_ptr<Game> game;
  std::optional<PotentialSpec> potential;
  std::string kind;
};

LoadedGame load_game(const TextConfig& config);
LoadedGame load_game_file(const std::string& path);
LoadedGame load_game_text(const std::string& text, const std::string& origin = "<string>");

// Default potential for verification: the file's [potential] section when
// present, otherwise Rosenthal for congestion kinds and the lexicographic
// encoding for task allocation.
std::optional<PotentialSpec> default_potential(const LoadedGame& loaded);

// Mixed profile literal: per-player blocks separated by ';', e.g.
// "0.9 0.1 ; 0.5 0.5". Values are validated against the game's strategy
// counts and must sum to 1 per block within 1e-9.
MixedProfile parse_mixed_profile(const std::string& text, const std::vector<int>& strategy_counts);

}  // namespace replidyn
