// replidyn: stochastic learning dynamics in finite games.
//
// One executable, one subcommand per experiment kind. Every subcommand
// accepts --config FILE (a sectioned key=value file, see docs/formats.md);
// flags override config values. Results land in --out as CSVs plus a
// manifest, and the exit code is 0 exactly when all embedded checks pass.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "replidyn/acceptance.hpp"
#include "replidyn/harness.hpp"
#include "replidyn/version.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string game;
  std::string out_dir;
  std::string q0;
  std::string potential;
  std::string p;
  long long seed = -1;
  int threads = -1;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool needs_game = true) {
  cmd->add_option("--config", flags.config_path, "experiment config file");
  auto* game = cmd->add_option("--game", flags.game, "game file or bundled:<name>");
  if (needs_game) game->required(false);
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_option("--seed", flags.seed, "master seed");
  cmd->add_option("--q0", flags.q0, "initial mixed profile, blocks separated by ';'");
  cmd->add_option("--potential", flags.potential,
                  "potential selector: auto|none|rosenthal|lexicographic|table");
  cmd->add_option("--p", flags.p, "player selection probabilities");
  cmd->add_option("--threads", flags.threads, "worker threads (0 = hardware)");
}

replidyn::ExperimentConfig base_config(const CommonFlags& flags, const std::string& kind) {
  replidyn::ExperimentConfig config;
  if (!flags.config_path.empty()) {
    config = replidyn::ExperimentConfig::from_file(flags.config_path);
  }
  config.kind = kind;
  if (!flags.game.empty()) config.game = flags.game;
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  if (flags.seed >= 0) config.seed = static_cast<std::uint64_t>(flags.seed);
  if (!flags.q0.empty()) config.q0 = flags.q0;
  if (!flags.potential.empty()) config.potential = flags.potential;
  if (flags.threads >= 0) config.threads = flags.threads;
  if (!flags.p.empty()) {
    config.player_select.clear();
    std::istringstream stream(flags.p);
    double v = 0.0;
    while (stream >> v) config.player_select.push_back(v);
  }
  if (config.game.empty()) throw replidyn::ConfigError("no game given (--game or config)");
  return config;
}

int execute(const replidyn::ExperimentConfig& config) {
  const replidyn::RunManifest manifest = replidyn::run_experiment(config);
  std::cout << (manifest.pass ? "PASS" : "FAIL") << "  " << config.kind << "  "
            << manifest.summary << "\n";
  std::cout << "outputs in " << config.out_dir << " (manifest.txt";
  for (const auto& [path, digest] : manifest.outputs) {
    (void)digest;
    std::cout << ", " << path.substr(path.find_last_of('/') + 1);
  }
  std::cout << ")\n";
  return manifest.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic learning dynamics in finite games"};
  app.set_version_flag("--version", std::string("replidyn ") + replidyn::kVersion);
  app.require_subcommand(1);

  // simulate
  CommonFlags sim_flags;
  std::string sim_seeds;
  long long sim_steps = -1, sim_stride = -1;
  double sim_b = -1.0, sim_alpha = -1.0;
  std::string sim_mode;
  auto* sim = app.add_subcommand("simulate", "run the stochastic learning algorithm");
  add_common(sim, sim_flags);
  sim->add_option("--b", sim_b, "step size");
  sim->add_option("--alpha", sim_alpha, "replicator branch weight");
  sim->add_option("--mode", sim_mode, "plain | perturbed");
  sim->add_option("--steps", sim_steps, "rounds to simulate");
  sim->add_option("--stride", sim_stride, "record every N steps");
  sim->add_option("--seeds", sim_seeds, "space-separated seed sweep");

  // ode
  CommonFlags ode_flags;
  double ode_T = -1.0, ode_h = -1.0, ode_residual = -1.0;
  bool ode_unscaled = false;
  long long ode_stride = -1;
  auto* ode = app.add_subcommand("ode", "integrate the mean-field replicator ODE");
  add_common(ode, ode_flags);
  ode->add_option("--T", ode_T, "horizon in rescaled time");
  ode->add_option("--h-step", ode_h, "RK4 step");
  ode->add_option("--stride", ode_stride, "record every N steps");
  ode->add_option("--residual-stop", ode_residual, "stop once the field norm drops below this");
  ode->add_flag("--unscaled", ode_unscaled, "drop the 1/M time scaling");

  // classify
  CommonFlags cls_flags;
  double cls_eps = -1.0, cls_tol = -1.0;
  auto* cls = app.add_subcommand("classify", "classify a profile: stationary / Nash / eps-Nash");
  add_common(cls, cls_flags);
  cls->add_option("--epsilon", cls_eps, "epsilon for the eps-Nash flag");
  cls->add_option("--tol", cls_tol, "stationarity tolerance");

  // nash
  CommonFlags nash_flags;
  auto* nash = app.add_subcommand("nash", "enumerate pure Nash equilibria");
  add_common(nash, nash_flags);

  // verify-potential
  CommonFlags ver_flags;
  long long ver_samples = -1;
  auto* ver = app.add_subcommand("verify-potential",
                                 "exhaustive ordinal/exact checks plus continuous structure");
  add_common(ver, ver_flags);
  ver->add_option("--samples", ver_samples, "sampled profiles for the structure checks");

  // drift-check
  CommonFlags drift_flags;
  std::string drift_bs;
  double drift_b = -1.0, drift_alpha = -1.0;
  std::string drift_mode;
  auto* drift = app.add_subcommand("drift-check", "exact one-step drift vs the closed form");
  add_common(drift, drift_flags);
  drift->add_option("--b", drift_b, "step size");
  drift->add_option("--b-sweep", drift_bs, "space-separated b list (fits the O(b^2) order)");
  drift->add_option("--alpha", drift_alpha, "replicator branch weight");
  drift->add_option("--mode", drift_mode, "plain | perturbed");

  // hit-time
  CommonFlags hit_flags;
  std::string hit_eps, hit_bs;
  long long hit_trials = -1, hit_max_steps = -1;
  double hit_alpha = -1.0;
  auto* hit = app.add_subcommand("hit-time", "empirical eps-Nash hitting times");
  add_common(hit, hit_flags);
  hit->add_option("--epsilon", hit_eps, "space-separated epsilon sweep");
  hit->add_option("--b", hit_bs, "space-separated b per epsilon (default: config b)");
  hit->add_option("--trials", hit_trials, "trials per cell");
  hit->add_option("--max-steps", hit_max_steps, "censoring horizon");
  hit->add_option("--alpha", hit_alpha, "perturbed-branch weight");

  // escape-prob
  CommonFlags esc_flags;
  std::string esc_lambdas;
  long long esc_trials = -1, esc_horizon = -1;
  double esc_b = -1.0;
  auto* esc = app.add_subcommand("escape-prob", "level-set escape frequency vs the Doob bound");
  add_common(esc, esc_flags);
  esc->add_option("--lambda", esc_lambdas, "space-separated lambda sweep");
  esc->add_option("--trials", esc_trials, "trials per lambda");
  esc->add_option("--horizon", esc_horizon, "steps per trial");
  esc->add_option("--b", esc_b, "step size");

  // ode-dev
  CommonFlags dev_flags;
  std::string dev_bs;
  long long dev_trials = -1;
  double dev_T = -1.0;
  auto* dev = app.add_subcommand("ode-dev", "stochastic-vs-ODE sup deviation per step size");
  add_common(dev, dev_flags);
  dev->add_option("--b-list", dev_bs, "space-separated step sizes");
  dev->add_option("--trials", dev_trials, "trials per step size");
  dev->add_option("--T", dev_T, "horizon in rescaled time");

  // run
  std::string run_config;
  auto* run = app.add_subcommand("run", "run an experiment config file as-is");
  run->add_option("--config", run_config, "experiment config file")->required();

  // suite
  bool suite_quick = false;
  int suite_threads = 0;
  auto* suite = app.add_subcommand("suite", "built-in verification suite on the bundled games");
  suite->add_flag("--quick", suite_quick,
                  "1/10 trial counts; statistical criteria become informational");
  suite->add_option("--threads", suite_threads, "worker threads (0 = hardware)");

  CLI11_PARSE(app, argc, argv);

  const auto parse_list = [](const std::string& text) {
    std::vector<double> values;
    std::istringstream stream(text);
    double v = 0.0;
    while (stream >> v) values.push_back(v);
    return values;
  };

  try {
    if (sim->parsed()) {
      auto config = base_config(sim_flags, "simulate");
      if (sim_b > 0) config.b = sim_b;
      if (sim_alpha > 0) config.alpha = sim_alpha;
      if (!sim_mode.empty()) config.mode = sim_mode;
      if (sim_steps >= 0) config.steps = static_cast<std::uint64_t>(sim_steps);
      if (sim_stride > 0) config.stride = static_cast<std::uint64_t>(sim_stride);
      if (!sim_seeds.empty()) {
        config.seeds.clear();
        for (double s : parse_list(sim_seeds)) {
          config.seeds.push_back(static_cast<std::uint64_t>(s));
        }
      }
      return execute(config);
    }
    if (ode->parsed()) {
      auto config = base_config(ode_flags, "ode");
      if (ode_T >= 0) config.T = ode_T;
      if (ode_h > 0) config.h = ode_h;
      if (ode_stride > 0) config.stride = static_cast<std::uint64_t>(ode_stride);
      if (ode_residual >= 0) config.residual_stop = ode_residual;
      if (ode_unscaled) config.scaled = false;
      return execute(config);
    }
    if (cls->parsed()) {
      auto config = base_config(cls_flags, "classify");
      if (cls_eps >= 0) config.epsilon = cls_eps;
      if (cls_tol > 0) config.tol = cls_tol;
      return execute(config);
    }
    if (nash->parsed()) return execute(base_config(nash_flags, "nash"));
    if (ver->parsed()) {
      auto config = base_config(ver_flags, "verify-potential");
      if (ver_samples > 0) config.samples = static_cast<int>(ver_samples);
      return execute(config);
    }
    if (drift->parsed()) {
      auto config = base_config(drift_flags, "drift-check");
      if (drift_b > 0) config.b = drift_b;
      if (drift_alpha > 0) config.alpha = drift_alpha;
      if (!drift_mode.empty()) config.mode = drift_mode;
      if (!drift_bs.empty()) config.b_list = parse_list(drift_bs);
      return execute(config);
    }
    if (hit->parsed()) {
      auto config = base_config(hit_flags, "hit-time");
      config.mode = "perturbed";
      if (config.alpha >= 1.0) config.alpha = 0.9;
      if (hit_alpha > 0) config.alpha = hit_alpha;
      if (!hit_eps.empty()) config.eps_list = parse_list(hit_eps);
      if (!hit_bs.empty()) config.b_list = parse_list(hit_bs);
      if (hit_trials > 0) config.trials = static_cast<int>(hit_trials);
      if (hit_max_steps > 0) config.max_steps = static_cast<std::uint64_t>(hit_max_steps);
      return execute(config);
    }
    if (esc->parsed()) {
      auto config = base_config(esc_flags, "escape-prob");
      if (!esc_lambdas.empty()) config.lambda_list = parse_list(esc_lambdas);
      if (esc_trials > 0) config.trials = static_cast<int>(esc_trials);
      if (esc_horizon > 0) config.horizon = static_cast<std::uint64_t>(esc_horizon);
      if (esc_b > 0) config.b = esc_b;
      return execute(config);
    }
    if (dev->parsed()) {
      auto config = base_config(dev_flags, "ode-dev");
      if (!dev_bs.empty()) config.b_list = parse_list(dev_bs);
      if (dev_trials > 0) config.trials = static_cast<int>(dev_trials);
      if (dev_T > 0) config.T = dev_T;
      return execute(config);
    }
    if (run->parsed()) {
      return execute(replidyn::ExperimentConfig::from_file(run_config));
    }
    if (suite->parsed()) {
      const replidyn::SuiteReport report =
          replidyn::builtin_suite({suite_quick, suite_threads});
      for (const auto& item : report.items) {
        std::printf("%s  %d (%.1fs)  %s  %s\n",
                    item.pass ? "PASS" : (item.informational ? "INFO" : "FAIL"), item.id,
                    item.seconds, item.name.c_str(), item.detail.c_str());
      }
      std::printf("%s\n", report.all_pass() ? "ALL PASS" : "FAILURES PRESENT");
      return report.all_pass() ? 0 : 1;
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
  return 0;
}
