#include "replidyn/game_io.hpp"

#include <cmath>
#include <sstream>

namespace replidyn {
namespace {

std::vector<std::vector<double>> read_cost_rows(const TextConfig& config, const std::string& key,
                                                int expected_rows) {
  const auto rows = config.all("costs", key);
  if (static_cast<int>(rows.size()) != expected_rows) {
    throw ConfigError(config.origin() + ": [costs] needs " + std::to_string(expected_rows) +
                      " '" + key + "' rows, found " + std::to_string(rows.size()));
  }
  std::vector<std::vector<double>> tables;
  tables.reserve(rows.size());
  for (const auto* row : rows) {
    std::vector<double> values;
    values.reserve(row->tokens.size());
    for (const auto& token : row->tokens) {
      values.push_back(TextConfig::token_to_double(token, config.origin() + " [costs] " + key));
    }
    tables.push_back(std::move(values));
  }
  return tables;
}

// Machine tables in files list C(1), C(2), ...; prepend the implicit C(0) = 0.
std::vector<std::vector<double>> with_zero_load(std::vector<std::vector<double>> tables) {
  for (auto& table : tables) table.insert(table.begin(), 0.0);
  return tables;
}

std::unique_ptr<Game> load_normal_form(const TextConfig& config, int players, double cost_bound) {
  std::vector<int> counts = config.get_ints("game", "strategies");
  if (static_cast<int>(counts.size()) != players) {
    throw ConfigError(config.origin() + ": strategies list must name one count per player");
  }
  auto tables = read_cost_rows(config, "player", players);
  const double noise = config.get_double_or("game", "noise", 0.0);
  return std::make_unique<NormalFormGame>(std::move(counts), std::move(tables), cost_bound, noise);
}

std::unique_ptr<Game> load_load_balancing(const TextConfig& config, int players,
                                          double cost_bound) {
  const int machines = static_cast<int>(config.get_int("game", "machines"));
  auto tables = with_zero_load(read_cost_rows(config, "machine", machines));
  std::vector<int> weights;
  if (config.has("game", "weights")) weights = config.get_ints("game", "weights");
  return std::make_unique<CongestionGame>(CongestionGame::load_balancing(
      players, machines, std::move(tables), cost_bound, std::move(weights)));
}

std::unique_ptr<Game> load_congestion(const TextConfig& config, int players, double cost_bound) {
  const int resources = static_cast<int>(config.get_int("game", "resources"));
  const auto rows = config.all("strategies", "player");
  if (static_cast<int>(rows.size()) != players) {
    throw ConfigError(config.origin() + ": [strategies] needs one 'player' row per player");
  }
  std::vector<std::vector<std::vector<int>>> strategies;
  strategies.reserve(rows.size());
  for (const auto* row : rows) {
    std::vector<std::vector<int>> per_player;
    std::vector<int> subset;
    for (const auto& token : row->tokens) {
      if (token == ";") {
        if (subset.empty()) throw ConfigError(config.origin() + ": empty strategy subset");
        per_player.push_back(subset);
        subset.clear();
        continue;
      }
      const long long r =
          TextConfig::token_to_int(token, config.origin() + " [strategies] player");
      subset.push_back(static_cast<int>(r) - 1);  // 1-based in files
    }
    if (!subset.empty()) per_player.push_back(subset);
    if (per_player.empty()) throw ConfigError(config.origin() + ": player with no strategies");
    strategies.push_back(std::move(per_player));
  }
  auto tables = with_zero_load(read_cost_rows(config, "resource", resources));
  std::vector<int> weights;
  if (config.has("game", "weights")) weights = config.get_ints("game", "weights");
  return std::make_unique<CongestionGame>(resources, std::move(strategies), std::move(tables),
                                          cost_bound, std::move(weights));
}

std::unique_ptr<Game> load_task_allocation(const TextConfig& config, int players,
                                           double cost_bound) {
  const int machines = static_cast<int>(config.get_int("game", "machines"));
  const auto weights = config.get_doubles("game", "weights");
  if (static_cast<int>(weights.size()) != players) {
    throw ConfigError(config.origin() + ": weights list must name one weight per player");
  }
  const std::string policy = config.get_string("game", "policy");
  SchedulingPolicy p;
  if (policy == "spt") {
    p = SchedulingPolicy::Spt;
  } else if (policy == "lpt") {
    p = SchedulingPolicy::Lpt;
  } else {
    throw ConfigError(config.origin() + ": policy must be spt or lpt");
  }
  return std::make_unique<TaskAllocationGame>(machines, weights, p, cost_bound);
}

}  // namespace

LoadedGame load_game(const TextConfig& config) {
  LoadedGame loaded;
  loaded.kind = config.get_string("game", "kind");
  const int players = static_cast<int>(config.get_int("game", "players"));
  const double cost_bound = config.get_double("game", "cost_bound");

  if (loaded.kind == "normalform") {
    loaded.game = load_normal_form(config, players, cost_bound);
  } else if (loaded.kind == "loadbalancing") {
    loaded.game = load_load_balancing(config, players, cost_bound);
  } else if (loaded.kind == "congestion") {
    loaded.game = load_congestion(config, players, cost_bound);
  } else if (loaded.kind == "taskalloc") {
    loaded.game = load_task_allocation(config, players, cost_bound);
  } else {
    throw ConfigError(config.origin() + ": unknown game kind '" + loaded.kind + "'");
  }

  if (config.has_section("potential")) {
    const std::string source = config.get_string("potential", "source");
    if (source == "rosenthal") {
      loaded.potential = PotentialSpec::rosenthal();
    } else if (source == "lexicographic") {
      loaded.potential = PotentialSpec::lex_task_allocation();
    } else if (source == "table") {
      loaded.potential = PotentialSpec::table(config.get_doubles("potential", "values"));
    } else {
      throw ConfigError(config.origin() + ": unknown potential source '" + source + "'");
    }
  }
  return loaded;
}

LoadedGame load_game_file(const std::string& path) {
  return load_game(TextConfig::parse_file(path));
}

LoadedGame load_game_text(const std::string& text, const std::string& origin) {
  return load_game(TextConfig::parse(text, origin));
}

std::optional<PotentialSpec> default_potential(const LoadedGame& loaded) {
  if (loaded.potential) return loaded.potential;
  if (loaded.kind == "congestion" || loaded.kind == "loadbalancing") {
    const auto* cg = dynamic_cast<const CongestionGame*>(loaded.game.get());
    if (cg && cg->unit_weights()) return PotentialSpec::rosenthal();
    return std::nullopt;
  }
  if (loaded.kind == "taskalloc") return PotentialSpec::lex_task_allocation();
  return std::nullopt;
}

MixedProfile parse_mixed_profile(const std::string& text,
                                 const std::vector<int>& strategy_counts) {
  std::vector<std::vector<double>> blocks(1);
  std::istringstream stream(text);
  std::string token;
  while (stream >> token) {
    if (token == ";") {
      blocks.emplace_back();
      continue;
    }
    blocks.back().push_back(TextConfig::token_to_double(token, "mixed profile"));
  }
  if (blocks.size() != strategy_counts.size()) {
    throw ConfigError("mixed profile has " + std::to_string(blocks.size()) +
                      " blocks, expected " + std::to_string(strategy_counts.size()));
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (static_cast<int>(blocks[i].size()) != strategy_counts[i]) {
      throw ConfigError("mixed profile block " + std::to_string(i + 1) + " has " +
                        std::to_string(blocks[i].size()) + " entries, expected " +
                        std::to_string(strategy_counts[i]));
    }
  }
  MixedProfile q(std::move(blocks));
  if (!q.simplex_valid(1e-9)) {
    throw ConfigError("mixed profile blocks must be probability vectors");
  }
  return q;
}

}  // namespace replidyn
