#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "replidyn/game_io.hpp"
#include "replidyn/oracle.hpp"
#include "replidyn/textconfig.hpp"

namespace replidyn {

// One experiment run, parsed from a config file or assembled by the CLI.
// Section layout of config files is documented in docs/formats.md.
struct ExperimentConfig {
  std::string kind;  // simulate | ode | drift-check | hit-time | escape-prob |
                     // ode-dev | verify-potential | nash | classify
  std::string game;  // path, or bundled:<name>
  std::string out_dir = "out";
  std::uint64_t seed = 1;

  // dynamics
  double b = 0.01;
  double alpha = 1.0;
  std::string mode = "plain";
  std::vector<double> player_select;
  std::uint64_t steps = 100000;
  std::uint64_t stride = 1;
  std::string q0;                  // mixed-profile literal; empty = uniform
  std::string potential = "auto";  // auto | rosenthal | lexicographic | table | none

  // ode
  double T = 100.0;
  double h = 0.01;
  bool scaled = true;
  double residual_stop = 0.0;

  // oracle / statistics
  int trials = 200;
  std::uint64_t max_steps = 1000000;
  std::uint64_t horizon = 100000;
  double epsilon = 0.1;
  double lambda = 2.0;
  int samples = 100;
  int segments = 1024;
  int threads = 0;
  double tol = 1e-9;

  // sweeps
  std::vector<double> b_list;
  std::vector<double> eps_list;
  std::vector<double> lambda_list;
  std::vector<std::uint64_t> seeds;

  static ExperimentConfig from_config(const TextConfig& config);
  static ExperimentConfig from_file(const std::string& path);

  // Canonical text snapshot embedded in manifests; reparsing it reproduces
  // the run.
  std::string snapshot() const;
};

struct RunManifest {
  std::string tool;
  std::string kind;
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> trial_seeds;
  std::vector<std::pair<std::string, std::string>> outputs;  // path, fnv1a digest
  double wall_seconds = 0.0;
  bool pass = true;
  std::string summary;
  std::string config_snapshot;

  std::string to_text() const;
};

// Executes the named experiment across its sweeps, writes CSV outputs plus
// out_dir/manifest.txt, and reflects embedded property checks in `pass`.
RunManifest run_experiment(const ExperimentConfig& config);

// Game resolution shared with the CLI: bundled:<name> or a file path.
LoadedGame resolve_game(const std::string& spec);
std::optional<PotentialSpec> resolve_potential(const LoadedGame& loaded,
                                               const std::string& selector);

}  // namespace replidyn
