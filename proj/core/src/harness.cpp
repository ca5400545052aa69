#include "replidyn/harness.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "replidyn/bundled_games.hpp"
#include "replidyn/csv.hpp"
#include "replidyn/version.hpp"

namespace replidyn {
namespace {

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (k > 0) out += ' ';
    out += tokens[k];
  }
  return out;
}

std::vector<std::uint64_t> get_u64_list(const TextConfig& config, const std::string& section,
                                        const std::string& key) {
  std::vector<std::uint64_t> out;
  const auto* entry = config.find(section, key);
  if (!entry) return out;
  for (const auto& token : entry->tokens) {
    out.push_back(static_cast<std::uint64_t>(
        TextConfig::token_to_int(token, "[" + section + "] " + key)));
  }
  return out;
}

std::string bool_str(bool v) { return v ? "true" : "false"; }

}  // namespace

ExperimentConfig ExperimentConfig::from_config(const TextConfig& config) {
  ExperimentConfig out;
  out.kind = config.get_string("experiment", "kind");
  out.game = config.get_string("experiment", "game");
  out.out_dir = config.get_string_or("experiment", "out", out.out_dir);
  out.seed = static_cast<std::uint64_t>(config.get_int_or("experiment", "seed", 1));
  out.threads = static_cast<int>(config.get_int_or("experiment", "threads", 0));

  out.b = config.get_double_or("dynamics", "b", out.b);
  out.alpha = config.get_double_or("dynamics", "alpha", out.alpha);
  out.mode = config.get_string_or("dynamics", "mode", out.mode);
  if (const auto* entry = config.find("dynamics", "p")) {
    for (const auto& token : entry->tokens) {
      out.player_select.push_back(TextConfig::token_to_double(token, "[dynamics] p"));
    }
  }
  out.steps = static_cast<std::uint64_t>(config.get_int_or("dynamics", "steps",
                                                           static_cast<long long>(out.steps)));
  out.stride = static_cast<std::uint64_t>(config.get_int_or("dynamics", "stride",
                                                            static_cast<long long>(out.stride)));
  if (const auto* entry = config.find("dynamics", "q0")) out.q0 = join_tokens(entry->tokens);
  out.potential = config.get_string_or("dynamics", "potential", out.potential);

  out.T = config.get_double_or("ode", "T", out.T);
  out.h = config.get_double_or("ode", "h", out.h);
  out.scaled = config.get_string_or("ode", "scaled", "true") != "false";
  out.residual_stop = config.get_double_or("ode", "residual_stop", out.residual_stop);

  out.trials = static_cast<int>(config.get_int_or("stats", "trials", out.trials));
  out.max_steps = static_cast<std::uint64_t>(
      config.get_int_or("stats", "max_steps", static_cast<long long>(out.max_steps)));
  out.horizon = static_cast<std::uint64_t>(
      config.get_int_or("stats", "horizon", static_cast<long long>(out.horizon)));
  out.epsilon = config.get_double_or("stats", "epsilon", out.epsilon);
  out.lambda = config.get_double_or("stats", "lambda", out.lambda);
  out.samples = static_cast<int>(config.get_int_or("stats", "samples", out.samples));
  out.segments = static_cast<int>(config.get_int_or("stats", "segments", out.segments));
  out.tol = config.get_double_or("stats", "tol", out.tol);

  if (config.has("sweep", "b")) out.b_list = config.get_doubles("sweep", "b");
  if (config.has("sweep", "epsilon")) out.eps_list = config.get_doubles("sweep", "epsilon");
  if (config.has("sweep", "lambda")) out.lambda_list = config.get_doubles("sweep", "lambda");
  out.seeds = get_u64_list(config, "sweep", "seeds");
  return out;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  return from_config(TextConfig::parse_file(path));
}

std::string ExperimentConfig::snapshot() const {
  std::ostringstream out;
  out << "[experiment]\n";
  out << "kind = " << kind << "\n";
  out << "game = " << game << "\n";
  out << "out = " << out_dir << "\n";
  out << "seed = " << seed << "\n";
  out << "threads = " << threads << "\n";
  out << "\n[dynamics]\n";
  out << "b = " << format_double17(b) << "\n";
  out << "alpha = " << format_double17(alpha) << "\n";
  out << "mode = " << mode << "\n";
  if (!player_select.empty()) {
    out << "p =";
    for (double p : player_select) out << ' ' << format_double17(p);
    out << "\n";
  }
  out << "steps = " << steps << "\n";
  out << "stride = " << stride << "\n";
  if (!q0.empty()) out << "q0 = " << q0 << "\n";
  out << "potential = " << potential << "\n";
  out << "\n[ode]\n";
  out << "T = " << format_double17(T) << "\n";
  out << "h = " << format_double17(h) << "\n";
  out << "scaled = " << bool_str(scaled) << "\n";
  out << "residual_stop = " << format_double17(residual_stop) << "\n";
  out << "\n[stats]\n";
  out << "trials = " << trials << "\n";
  out << "max_steps = " << max_steps << "\n";
  out << "horizon = " << horizon << "\n";
  out << "epsilon = " << format_double17(epsilon) << "\n";
  out << "lambda = " << format_double17(lambda) << "\n";
  out << "samples = " << samples << "\n";
  out << "segments = " << segments << "\n";
  out << "tol = " << format_double17(tol) << "\n";
  const bool sweep =
      !b_list.empty() || !eps_list.empty() || !lambda_list.empty() || !seeds.empty();
  if (sweep) {
    out << "\n[sweep]\n";
    if (!b_list.empty()) {
      out << "b =";
      for (double v : b_list) out << ' ' << format_double17(v);
      out << "\n";
    }
    if (!eps_list.empty()) {
      out << "epsilon =";
      for (double v : eps_list) out << ' ' << format_double17(v);
      out << "\n";
    }
    if (!lambda_list.empty()) {
      out << "lambda =";
      for (double v : lambda_list) out << ' ' << format_double17(v);
      out << "\n";
    }
    if (!seeds.empty()) {
      out << "seeds =";
      for (std::uint64_t v : seeds) out << ' ' << v;
      out << "\n";
    }
  }
  return out.str();
}

std::string RunManifest::to_text() const {
  std::ostringstream out;
  out << "[manifest]\n";
  out << "tool = " << tool << "\n";
  out << "kind = " << kind << "\n";
  out << "pass = " << bool_str(pass) << "\n";
  out << "master_seed = " << master_seed << "\n";
  out << "wall_seconds = " << format_double17(wall_seconds) << "\n";
  out << "summary = " << summary << "\n";
  out << "\n[outputs]\n";
  for (const auto& [path, digest] : outputs) {
    out << "file = " << path << ' ' << digest << "\n";
  }
  if (!trial_seeds.empty()) {
    out << "\n[trial_seeds]\n";
    for (std::uint64_t s : trial_seeds) out << "seed = " << s << "\n";
  }
  return out.str();
}

LoadedGame resolve_game(const std::string& spec) {
  constexpr const char* kBundledPrefix = "bundled:";
  if (spec.rfind(kBundledPrefix, 0) == 0) {
    const std::string name = spec.substr(std::string(kBundledPrefix).size());
    LoadedGame loaded;
    loaded.game = make_bundled(name);
    loaded.potential = bundled_potential(name);
    if (name == "lb2") {
      loaded.kind = "loadbalancing";
    } else if (name == "congestion3") {
      loaded.kind = "congestion";
    } else if (name == "taskalloc4") {
      loaded.kind = "taskalloc";
    } else {
      loaded.kind = "normalform";
    }
    return loaded;
  }
  return load_game_file(spec);
}

std::optional<PotentialSpec> resolve_potential(const LoadedGame& loaded,
                                               const std::string& selector) {
  if (selector == "none") return std::nullopt;
  if (selector == "auto" || selector.empty()) return default_potential(loaded);
  if (selector == "rosenthal") return PotentialSpec::rosenthal();
  if (selector == "lexicographic") return PotentialSpec::lex_task_allocation();
  if (selector == "table") {
    if (loaded.potential &&
        loaded.potential->source() == PotentialSpec::Source::Table) {
      return loaded.potential;
    }
    throw ConfigError("potential = table needs a [potential] table in the game file");
  }
  throw ConfigError("unknown potential selector '" + selector + "'");
}

namespace {

struct RunContext {
  const ExperimentConfig& config;
  LoadedGame loaded;
  RunManifest manifest;

  const Game& game() const { return *loaded.game; }

  DynamicsConfig dynamics() const {
    DynamicsConfig dyn;
    dyn.b = config.b;
    dyn.alpha = config.alpha;
    dyn.mode = config.mode == "perturbed" ? UpdateMode::Perturbed : UpdateMode::Plain;
    if (config.mode != "plain" && config.mode != "perturbed") {
      throw ConfigError("mode must be plain or perturbed");
    }
    dyn.player_select = config.player_select;
    dyn.gamma = GammaSpec::affine(game().cost_bound());
    dyn.validate(game());
    return dyn;
  }

  // q0 is an inline literal, or @path to a file holding one.
  MixedProfile initial_profile() const {
    if (config.q0.empty()) return MixedProfile::uniform(game().strategy_counts());
    std::string literal = config.q0;
    if (literal.front() == '@') literal = read_file(literal.substr(1));
    return parse_mixed_profile(literal, game().strategy_counts());
  }

  std::vector<double> selection_probs() const {
    return dynamics().effective_p(game().players());
  }

  void emit(const std::string& filename, const std::string& bytes) {
    const std::string path = config.out_dir + "/" + filename;
    write_file_atomic(path, bytes);
    manifest.outputs.emplace_back(path, fnv1a_hex(bytes));
  }

  void record_trial_seeds(std::uint64_t cell_seed, int trials) {
    if (trials <= 64) {
      for (int k = 0; k < trials; ++k) {
        manifest.trial_seeds.push_back(
            Rng::derive_trial_seed(cell_seed, static_cast<std::uint64_t>(k)));
      }
    } else {
      // Large batches record the cell seed; trial k replays from
      // Rng::derive_trial_seed(cell_seed, k).
      manifest.trial_seeds.push_back(cell_seed);
    }
  }
};

std::uint64_t cell_seed(std::uint64_t master, int cell) {
  return Rng::derive_trial_seed(master, 1000003ULL + static_cast<std::uint64_t>(cell));
}

std::vector<std::string> trajectory_header(const Game& game) {
  std::vector<std::string> header = {"step", "t_rescaled"};
  for (int i = 0; i < game.players(); ++i) {
    for (int l = 0; l < game.strategies(i); ++l) {
      header.push_back("q_" + std::to_string(i + 1) + "_" + std::to_string(l + 1));
    }
  }
  header.push_back("F");
  return header;
}

void run_simulate(RunContext& ctx) {
  const DynamicsConfig dyn = ctx.dynamics();
  const auto potential_spec = resolve_potential(ctx.loaded, ctx.config.potential);
  std::optional<ExpectedPotential> potential;
  if (potential_spec) potential.emplace(ctx.game(), *potential_spec);

  std::vector<std::uint64_t> seeds = ctx.config.seeds;
  if (seeds.empty()) seeds.push_back(ctx.config.seed);

  for (const std::uint64_t seed : seeds) {
    CsvWriter csv(trajectory_header(ctx.game()));
    LearnerState state(ctx.initial_profile(), seed);
    run(state, ctx.game(), dyn, ctx.config.steps, ctx.config.stride,
        [&](std::uint64_t t, const MixedProfile& q) {
          std::vector<CsvValue> row;
          row.emplace_back(static_cast<std::uint64_t>(t));
          row.emplace_back(static_cast<double>(t) * dyn.b);
          for (double v : q.flatten()) row.emplace_back(v);
          if (potential) {
            row.emplace_back(potential->value(q));
          } else {
            row.emplace_back(std::monostate{});
          }
          csv.row(row);
        });
    if (!state.q.simplex_valid(1e-9)) {
      ctx.manifest.pass = false;
      ctx.manifest.summary = "simplex invariant violated";
    }
    ctx.emit("simulate_seed" + std::to_string(seed) + ".csv", csv.str());
    ctx.manifest.trial_seeds.push_back(seed);
  }
  if (ctx.manifest.summary.empty()) {
    ctx.manifest.summary = std::to_string(seeds.size()) + " trajectories of " +
                           std::to_string(ctx.config.steps) + " steps";
  }
}

void run_ode(RunContext& ctx) {
  const VectorField field =
      replicator_field(ctx.game(), ctx.selection_probs(), ctx.config.scaled);
  const OdeSolution sol = integrate(field, ctx.initial_profile(), ctx.config.T, ctx.config.h,
                                    ctx.config.stride, ctx.config.residual_stop);
  std::vector<std::string> header = {"t"};
  for (int i = 0; i < ctx.game().players(); ++i) {
    for (int l = 0; l < ctx.game().strategies(i); ++l) {
      header.push_back("q_" + std::to_string(i + 1) + "_" + std::to_string(l + 1));
    }
  }
  CsvWriter csv(header);
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    std::vector<CsvValue> row;
    row.emplace_back(sol.times[k]);
    for (double v : sol.states[k].flatten()) row.emplace_back(v);
    csv.row(row);
  }
  ctx.emit("ode.csv", csv.str());
  ctx.manifest.summary = "final residual " + format_double17(sol.final_residual);
}

void run_classify(RunContext& ctx) {
  const VectorField field =
      replicator_field(ctx.game(), ctx.selection_probs(), ctx.config.scaled);
  const Classification c = classify_point(field, ctx.game(), ctx.initial_profile(),
                                          ctx.config.tol, ctx.config.epsilon);
  CsvWriter csv({"stationary", "nash", "stationary_non_nash", "epsilon", "epsilon_nash",
                 "field_norm"});
  csv.row({std::string(bool_str(c.stationary)), std::string(bool_str(c.nash)),
           std::string(bool_str(c.stationary_non_nash)), c.epsilon,
           std::string(bool_str(c.epsilon_nash)), c.field_norm});
  ctx.emit("classify.csv", csv.str());
  std::ostringstream summary;
  summary << "stationary=" << bool_str(c.stationary) << " nash=" << bool_str(c.nash)
          << " stationary_non_nash=" << bool_str(c.stationary_non_nash)
          << " epsilon_nash(" << format_double17(c.epsilon)
          << ")=" << bool_str(c.epsilon_nash);
  ctx.manifest.summary = summary.str();
}

void run_nash(RunContext& ctx) {
  const auto nash = enumerate_pure_nash(ctx.game());
  std::vector<std::string> header = {"index"};
  for (int i = 0; i < ctx.game().players(); ++i) {
    header.push_back("s_" + std::to_string(i + 1));
  }
  CsvWriter csv(header);
  long long index = 0;
  for (const auto& profile : nash) {
    std::vector<CsvValue> row;
    row.emplace_back(index++);
    for (int choice : profile) row.emplace_back(static_cast<long long>(choice + 1));
    csv.row(row);
  }
  ctx.emit("nash.csv", csv.str());
  ctx.manifest.summary = std::to_string(nash.size()) + " pure Nash profiles";
}

void run_verify_potential(RunContext& ctx) {
  const auto spec = resolve_potential(ctx.loaded, ctx.config.potential);
  if (!spec) throw ConfigError("verify-potential needs a potential");

  CsvWriter csv({"check", "passed", "detail"});
  const OrdinalReport ordinal = verify_ordinal_potential(ctx.game(), *spec);
  auto witness_str = [](const std::optional<DeviationWitness>& w) -> std::string {
    if (!w) return "";
    std::string profile;
    for (std::size_t k = 0; k < w->from.size(); ++k) {
      if (k) profile += '/';
      profile += std::to_string(w->from[k] + 1);
    }
    return "profile " + profile + " player " + std::to_string(w->player + 1) + " -> strategy " +
           std::to_string(w->to + 1) + " dc " + format_double17(w->cost_delta) + " dphi " +
           format_double17(w->potential_delta);
  };
  csv.row({std::string("ordinal_sign_equivalence"), std::string(bool_str(ordinal.is_ordinal)),
           witness_str(ordinal.witness)});
  csv.row({std::string("exact_differences"), std::string(bool_str(ordinal.is_exact)),
           witness_str(ordinal.exactness_witness)});
  csv.row({std::string("improvement_consistent"),
           std::string(bool_str(ordinal.improvement_consistent)), witness_str(ordinal.witness)});

  bool pass = ordinal.is_ordinal || ordinal.improvement_consistent;

  if (ordinal.is_exact) {
    const ContinuousPotentialReport cont = check_continuous_potential(
        ctx.game(), *spec, ctx.config.samples, ctx.config.seed);
    csv.row({std::string("gradient_identity"), std::string(bool_str(cont.gradient_ok)),
             "max_err " + format_double17(cont.gradient_max_err) + " " + cont.gradient_witness});
    csv.row({std::string("externality_symmetry_tangent"),
             std::string(bool_str(cont.symmetry_tangent_ok)),
             "max_err " + format_double17(cont.symmetry_tangent_max_err) + " " +
                 cont.symmetry_witness});
    csv.row({std::string("externality_symmetry_ambient"),
             std::string(bool_str(cont.symmetry_ambient_ok)),
             "informational; max_err " + format_double17(cont.symmetry_ambient_max_err)});
    pass = pass && cont.gradient_ok && cont.symmetry_tangent_ok;

    // Path independence of the potential line integral.
    const ExpectedPotential potential(ctx.game(), *spec);
    Rng rng(ctx.config.seed ^ 0x9A7Full);
    const MixedProfile z = MixedProfile::uniform(ctx.game().strategy_counts());
    const MixedProfile target =
        random_interior_profile(ctx.game().strategy_counts(), rng, 0.05);
    const MixedProfile waypoint =
        random_interior_profile(ctx.game().strategy_counts(), rng, 0.05);
    const PathIntegralResult direct =
        potential_from_path_integral(ctx.game(), z, target, ctx.config.segments);
    const double alternative =
        path_integral_via(ctx.game(), {z, waypoint, target}, ctx.config.segments);
    const double expected = potential.value(target) - potential.value(z);
    const double path_gap = std::abs(direct.value - alternative);
    const double value_gap = std::abs(direct.value - expected);
    const bool path_ok = path_gap <= 1e-6 && value_gap <= 1e-6 && !direct.symmetry_warning;
    csv.row({std::string("path_integral_independence"), std::string(bool_str(path_ok)),
             "path_gap " + format_double17(path_gap) + " value_gap " +
                 format_double17(value_gap)});
    pass = pass && path_ok;
  } else {
    csv.row({std::string("continuous_structure"), std::string("skipped"),
             std::string("potential is not exact")});
  }

  ctx.emit("verify_potential.csv", csv.str());
  ctx.manifest.pass = pass;
  ctx.manifest.summary = std::string("ordinal=") + bool_str(ordinal.is_ordinal) +
                         " exact=" + bool_str(ordinal.is_exact) +
                         " improvement=" + bool_str(ordinal.improvement_consistent);
}

void run_drift_check(RunContext& ctx) {
  const auto spec = resolve_potential(ctx.loaded, ctx.config.potential);
  if (!spec) throw ConfigError("drift-check needs a potential");
  const ExpectedPotential potential(ctx.game(), *spec);
  const MixedProfile q = ctx.initial_profile();

  std::vector<double> bs = ctx.config.b_list;
  if (bs.empty()) bs.push_back(ctx.config.b);

  CsvWriter csv({"b", "alpha", "mode", "exact_dF", "gradient_form", "formula_dF",
                 "identity_gap", "order_gap", "prob_total", "identity_ok"});
  bool pass = true;
  std::vector<std::pair<double, double>> gap_points;
  for (const double b : bs) {
    DynamicsConfig dyn = ctx.dynamics();
    dyn.b = b;
    const DriftReport report = exact_one_step_drift(ctx.game(), potential, q, dyn);
    csv.row({report.b, dyn.alpha, std::string(ctx.config.mode), report.exact_dF,
             report.gradient_form, report.formula_dF, report.identity_gap, report.order_gap,
             report.prob_total, std::string(bool_str(report.multiaffine_identity_ok))});
    pass = pass && report.multiaffine_identity_ok;
    gap_points.emplace_back(b, report.order_gap);
  }
  std::string summary = "identity " + std::string(pass ? "ok" : "violated");
  if (bs.size() >= 3) {
    const double slope = fit_loglog_slope(gap_points);
    const bool all_exact = std::isnan(slope);
    if (!all_exact && slope < 1.9) pass = false;
    summary += all_exact ? "; order gaps at floating floor"
                         : "; order-fit slope " + format_double17(slope);
  }
  ctx.emit("drift_check.csv", csv.str());
  ctx.manifest.pass = pass;
  ctx.manifest.summary = summary;
}

void run_hit_time(RunContext& ctx) {
  const auto spec = resolve_potential(ctx.loaded, ctx.config.potential);
  if (!spec) throw ConfigError("hit-time needs a potential for the Z0/kappa bound");
  const ExpectedPotential potential(ctx.game(), *spec);
  const MixedProfile q0 = ctx.initial_profile();

  std::vector<double> eps_list = ctx.config.eps_list;
  if (eps_list.empty()) eps_list.push_back(ctx.config.epsilon);
  std::vector<double> b_list = ctx.config.b_list;

  CsvWriter csv({"epsilon", "b", "trials", "censored", "mean_tau", "ci_lo", "ci_hi", "z0",
                 "kappa", "bound", "within_bound"});
  bool pass = true;
  for (std::size_t cell = 0; cell < eps_list.size(); ++cell) {
    const double eps = eps_list[cell];
    DynamicsConfig dyn = ctx.dynamics();
    dyn.b = cell < b_list.size() ? b_list[cell] : ctx.config.b;
    const std::uint64_t seed = cell_seed(ctx.config.seed, static_cast<int>(cell));
    const HittingTimeResult result =
        hitting_time_trials(ctx.game(), potential, q0, eps, dyn, ctx.config.trials,
                            ctx.config.max_steps, seed, ctx.config.threads);
    const KappaEstimate kappa = measure_drift_kappa(ctx.game(), potential, dyn, eps,
                                                    ctx.config.samples, seed ^ 0x6A99AULL, 0.05);
    const double bound = kappa.kappa > 0.0 ? result.z0 / kappa.kappa
                                           : std::numeric_limits<double>::infinity();
    const bool within = !result.all_censored && result.mean_tau <= bound;
    csv.row({eps, dyn.b, static_cast<long long>(result.trials),
             static_cast<long long>(result.censored), result.mean_tau, result.ci_lo,
             result.ci_hi, result.z0, kappa.kappa, bound, std::string(bool_str(within))});
    if (result.all_censored) pass = false;
    ctx.record_trial_seeds(seed, ctx.config.trials);
  }
  ctx.emit("hit_time.csv", csv.str());
  ctx.manifest.pass = pass;
  ctx.manifest.summary = std::to_string(eps_list.size()) + " epsilon cells, " +
                         std::to_string(ctx.config.trials) + " trials each";
}

void run_escape_prob(RunContext& ctx) {
  const auto spec = resolve_potential(ctx.loaded, ctx.config.potential);
  if (!spec) throw ConfigError("escape-prob needs a potential");
  const ExpectedPotential potential(ctx.game(), *spec);
  const MixedProfile q0 = ctx.initial_profile();

  std::vector<double> lambdas = ctx.config.lambda_list;
  if (lambdas.empty()) lambdas.push_back(ctx.config.lambda);

  CsvWriter csv({"lambda", "trials", "horizon", "escapes", "fraction", "bound", "margin3",
                 "within_bound"});
  bool pass = true;
  for (std::size_t cell = 0; cell < lambdas.size(); ++cell) {
    const std::uint64_t seed = cell_seed(ctx.config.seed, static_cast<int>(cell));
    const EscapeResult result = level_escape_probability(
        ctx.game(), potential, q0, lambdas[cell], ctx.dynamics(), ctx.config.trials,
        ctx.config.horizon, seed, /*precheck_samples=*/200, ctx.config.threads);
    const bool within = result.fraction <= result.bound + result.margin3;
    csv.row({lambdas[cell], static_cast<long long>(result.trials),
             static_cast<std::uint64_t>(ctx.config.horizon),
             static_cast<long long>(result.escapes), result.fraction, result.bound,
             result.margin3, std::string(bool_str(within))});
    pass = pass && within;
    ctx.record_trial_seeds(seed, ctx.config.trials);
  }
  ctx.emit("escape_prob.csv", csv.str());
  ctx.manifest.pass = pass;
  ctx.manifest.summary = std::to_string(lambdas.size()) + " lambda cells";
}

void run_ode_dev(RunContext& ctx) {
  std::vector<double> bs = ctx.config.b_list;
  if (bs.empty()) bs = {0.04, 0.02, 0.01};
  const auto rows = ode_deviation(ctx.game(), ctx.initial_profile(), bs, ctx.config.T,
                                  ctx.config.trials, ctx.config.seed, ctx.dynamics(),
                                  /*h_ref=*/0.005, /*mean_dynamics=*/false, ctx.config.threads);
  CsvWriter csv({"b", "trials", "mean_sup_dev", "std_err"});
  bool pass = true;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    csv.row({rows[k].b, static_cast<long long>(rows[k].trials), rows[k].mean_sup_dev,
             rows[k].std_err});
    if (k > 0) {
      const double slack = 2.0 * (rows[k - 1].std_err + rows[k].std_err);
      if (rows[k].mean_sup_dev > rows[k - 1].mean_sup_dev + slack) pass = false;
    }
  }
  ctx.record_trial_seeds(ctx.config.seed, ctx.config.trials);
  ctx.emit("ode_dev.csv", csv.str());
  ctx.manifest.pass = pass;
  ctx.manifest.summary = "deviation rows " + std::to_string(rows.size()) +
                         (pass ? ", nonincreasing in b" : ", ordering violated");
}

}  // namespace

RunManifest run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();

  RunContext ctx{config, resolve_game(config.game), {}};
  ctx.manifest.tool = std::string("replidyn ") + kVersion;
  ctx.manifest.kind = config.kind;
  ctx.manifest.master_seed = config.seed;
  ctx.manifest.config_snapshot = config.snapshot();

  if (config.kind == "simulate") {
    run_simulate(ctx);
  } else if (config.kind == "ode") {
    run_ode(ctx);
  } else if (config.kind == "classify") {
    run_classify(ctx);
  } else if (config.kind == "nash") {
    run_nash(ctx);
  } else if (config.kind == "verify-potential") {
    run_verify_potential(ctx);
  } else if (config.kind == "drift-check") {
    run_drift_check(ctx);
  } else if (config.kind == "hit-time") {
    run_hit_time(ctx);
  } else if (config.kind == "escape-prob") {
    run_escape_prob(ctx);
  } else if (config.kind == "ode-dev") {
    run_ode_dev(ctx);
  } else {
    throw ConfigError("unknown experiment kind '" + config.kind + "'");
  }

  ctx.manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  write_file_atomic(config.out_dir + "/config.cfg", ctx.manifest.config_snapshot);
  write_file_atomic(config.out_dir + "/manifest.txt", ctx.manifest.to_text());
  return ctx.manifest;
}

}  // namespace replidyn
