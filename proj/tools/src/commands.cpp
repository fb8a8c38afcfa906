#include "commands.hpp"

#include <chrono>
#include <ctime>
#include <iostream>

#include <CLI11.hpp>

#include "rrm_cli/cli.hpp"
#include "rrm/rrm.hpp"

namespace rrm::cli {

std::uint64_t require_seed(const Options& o, const std::string& what) {
  if (!o.has_seed) throw ValidationError(what + " is stochastic: --seed is required");
  return o.seed;
}

StateSpec parse_spec(const std::string& name, const std::vector<std::string>& kv) {
  StateSpec spec{name, {}};
  for (const auto& item : kv) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ValidationError("--param expects k=v, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != val.size()) throw ValidationError("--param " + key + ": '" + val + "' is not a number");
    spec.params[key] = x;
  }
  return spec;
}

DensityMatrix load_state(const std::string& file, const std::string& zoo, const std::vector<std::string>& kv) {
  if (!file.empty() && !zoo.empty()) throw ValidationError("give either a state file or a zoo name, not both");
  if (!file.empty()) return read_state_file(file);
  if (!zoo.empty()) return named_state(parse_spec(zoo, kv));
  throw ValidationError("a state is required: --state <file> or --zoo <name>");
}

namespace {

std::string rule_name(SchmidtRule r) {
  switch (r) {
    case SchmidtRule::none: return "none";
    case SchmidtRule::second_moment_only: return "second_moment";
    case SchmidtRule::fourth_moment: return "fourth_moment";
  }
  return "?";
}

double trace_product(const CMatrix& a, const CMatrix& b) { return (a * b).trace().real(); }

}  // namespace

json verdict_json(double C2, double C4, int d) {
  const SchmidtVerdict v = schmidt_verdict(C2, C4, d);
  json j;
  j["C2"] = C2;
  j["C4"] = C4;
  j["d"] = d;
  j["bound"] = v.certified_sn_lower_bound;
  j["fired_rule"] = rule_name(v.fired_rule);
  j["boundary_flag"] = v.boundary_flag;
  json curve = json::array();
  for (const auto& [x, val] : v.f_min_values) curve.push_back({x, val ? json(*val) : json(nullptr)});
  j["f_min_curve"] = std::move(curve);
  return j;
}

json shadow_table(const std::vector<ShadowGridPoint>& points, std::uint64_t seed) {
  json rows = json::array();
  for (const auto& pt : points) {
    json row;
    row["grid_value"] = pt.grid_value;
    row["ensemble"] = to_string(pt.ensemble);
    row["mean_error"] = pt.mean_error;
    row["std"] = pt.std;
    row["n_settings"] = pt.n_settings;
    row["n_runs"] = pt.n_runs;
    row["seed"] = seed;
    row["mean_estimate"] = pt.mean_estimate;
    row["exact"] = pt.exact;
    row["assumption_violated"] = pt.assumption_violated;
    rows.push_back(std::move(row));
  }
  return rows;
}

Result cmd_zoo(const Options& o) {
  Result r;
  if (o.list) {
    r.data = json::array();
    for (const auto& name : catalog()) r.data.push_back(name);
    r.data.push_back("random");
    return r;
  }
  if (o.name.empty()) throw ValidationError("zoo: a state name is required (see zoo --list)");
  if (o.name == "random") {
    const std::uint64_t seed = require_seed(o, "zoo random");
    RandomStateKind kind;
    if (o.random_kind == "pure_haar") kind = RandomStateKind::pure_haar;
    else if (o.random_kind == "mixed_hs") kind = RandomStateKind::mixed_hs;
    else if (o.random_kind == "product") kind = RandomStateKind::product;
    else if (o.random_kind == "real_random") kind = RandomStateKind::real_random;
    else throw ValidationError("zoo random: unknown --kind '" + o.random_kind + "'");
    Rng rng = make_rng({seed, 0});
    r.data = state_to_json(random_state(kind, DimSpec::make(o.d, o.n), rng));
    return r;
  }
  r.data = state_to_json(named_state(parse_spec(o.name, o.params)));
  return r;
}

Result cmd_moments(const Options& o) {
  const DensityMatrix rho = load_state(o.state, o.zoo, o.params);
  const Protocol kind = protocol_from_string(o.kind);
  json j;
  j["kind"] = to_string(kind);
  j["t"] = o.t;
  j["mode"] = o.mode;
  if (o.mode == "exact") {
    j["value"] = exact_moment(rho, kind, o.t);
    j["std_err"] = 0.0;
    j["n_settings"] = nullptr;
    j["n_shots"] = nullptr;
    j["seed"] = nullptr;
  } else if (o.mode == "mc") {
    const std::uint64_t seed = require_seed(o, "moments --mode mc");
    const long settings = o.settings < 0 ? 10000 : o.settings;
    const MomentEstimate e = estimate_moment_mc(rho, kind, o.t, settings, o.shots, seed, o.threads);
    j["value"] = e.value;
    j["std_err"] = e.std_err;
    j["n_settings"] = e.n_settings;
    j["n_shots"] = e.n_shots;
    j["seed"] = seed;
  } else {
    throw ValidationError("moments: --mode must be exact or mc");
  }
  j["d"] = rho.d();
  j["n"] = rho.n();
  Result r;
  r.data = std::move(j);
  return r;
}

Result cmd_schmidt(const Options& o) {
  Result r;
  const bool direct = o.c2 >= 0.0 || o.c4 >= 0.0;
  if (direct) {
    if (o.c2 < 0.0 || o.c4 < 0.0) throw ValidationError("schmidt: --c2 and --c4 go together");
    if (!o.state.empty() || !o.zoo.empty()) throw ValidationError("schmidt: give moments or a state, not both");
    r.data = verdict_json(o.c2, o.c4, o.d);
    return r;
  }
  const DensityMatrix rho = load_state(o.state, o.zoo, o.params);
  if (rho.n() != 2) throw ValidationError("schmidt: a bipartite state is required");
  if (o.mode == "exact") {
    r.data = verdict_json(exact_moment(rho, Protocol::RRM, 2), exact_moment(rho, Protocol::RRM, 4), rho.d());
  } else if (o.mode == "mc") {
    const std::uint64_t seed = require_seed(o, "schmidt --mode mc");
    const long settings = o.settings < 0 ? 10000 : o.settings;
    // Same seed for both orders: C2 and C4 come from the same settings.
    const auto m2 = estimate_moment_mc(rho, Protocol::RRM, 2, settings, o.shots, seed, o.threads);
    const auto m4 = estimate_moment_mc(rho, Protocol::RRM, 4, settings, o.shots, seed, o.threads);
    r.data = verdict_json(std::max(0.0, m2.value), std::max(0.0, m4.value), rho.d());
    r.data["C2_std_err"] = m2.std_err;
    r.data["C4_std_err"] = m4.std_err;
    r.data["n_settings"] = settings;
    r.data["seed"] = seed;
  } else {
    throw ValidationError("schmidt: --mode must be exact or mc");
  }
  return r;
}

Result cmd_imaginarity(const Options& o) {
  const DensityMatrix rho = load_state(o.state, o.zoo, o.params);
  if (rho.n() != 2) throw ValidationError("imaginarity: a bipartite state is required");
  json j = json::object();
  ImaginarityVerdict v;
  ImaginarityGaps g;
  if (o.mode == "exact") {
    g = imaginarity_gaps(rho);
    v = imaginarity_verdict(g, &rho);
  } else if (o.mode == "mc") {
    const std::uint64_t seed = require_seed(o, "imaginarity --mode mc");
    const long settings = o.settings < 0 ? 10000 : o.settings;
    const EstimatedGaps e = estimate_imaginarity_gaps_mc(rho, settings, seed, o.threads);
    g = e.value;
    v = imaginarity_verdict(e);
    j["QhatA_std_err"] = e.QhatA_se;
    j["QhatB_std_err"] = e.QhatB_se;
    j["G_AB_std_err"] = e.G_AB_se;
    j["n_settings"] = settings;
    j["seed"] = seed;
  } else {
    throw ValidationError("imaginarity: --mode must be exact or mc");
  }
  json row;
  row["QhatA"] = g.QhatA;
  row["QhatB"] = g.QhatB;
  row["G_AB"] = g.G_AB;
  row["F_LB"] = robustness_lower_bound(g, rho.d());
  row["F_R"] = robustness_exact(rho);
  row["verdict"] = v.is_imaginary ? "imaginary" : "not_detected";
  json fired = json::array();
  for (auto c : v.fired_conditions) fired.push_back(to_string(c));
  row["fired_conditions"] = std::move(fired);
  row.update(j);
  Result r;
  r.data = std::move(row);
  return r;
}

namespace {

CVector shadow_target(const std::string& name, const DensityMatrix& rho) {
  if (name == "ghz") {
    if (rho.d() != 2) throw ValidationError("shadow: target ghz needs qubits");
    return ghz_vector(rho.n(), 1);
  }
  if (name == "max_entangled") {
    if (rho.n() != 2) throw ValidationError("shadow: target max_entangled needs two parties");
    return max_entangled_vector(rho.d());
  }
  throw ValidationError("shadow: unknown --target '" + name + "' (ghz or max_entangled)");
}

}  // namespace

Result cmd_shadow(const Options& o) {
  if (o.zoo.empty()) throw ValidationError("shadow: a state family is required (--zoo <name> --param ...)");
  const std::uint64_t seed = require_seed(o, "shadow");
  ShadowExperimentConfig cfg;
  cfg.state = parse_spec(o.zoo, o.params);
  cfg.grid_param = o.grid_param;
  cfg.grid_values = o.grid;
  if (cfg.grid_values.empty()) {
    const auto it = cfg.state.params.find(o.grid_param);
    if (it == cfg.state.params.end())
      throw ValidationError("shadow: give --grid or set " + o.grid_param + " with --param");
    cfg.grid_values = {it->second};
  }
  cfg.setting_counts = {o.settings < 0 ? 2000 : o.settings};
  const std::vector<std::string> ens = o.ensembles.empty() ? std::vector<std::string>{"global_orthogonal"} : o.ensembles;
  for (const auto& e : ens) cfg.ensembles.push_back(ensemble_from_string(e));
  cfg.n_runs = o.runs < 0 ? 1 : o.runs;
  cfg.seed = seed;
  cfg.threads = o.threads;
  StateSpec first = cfg.state;
  first.params[cfg.grid_param] = cfg.grid_values.front();
  cfg.target = shadow_target(o.target, named_state(first));

  Result r;
  r.default_format = "csv";
  r.data = shadow_table(fidelity_error_experiment(cfg), seed);

  if (!o.snapshots.empty()) {
    // Run 0 of every (grid, ensemble) cell, keyed exactly as in the experiment.
    std::string lines;
    for (std::size_t g = 0; g < cfg.grid_values.size(); ++g) {
      StateSpec spec = cfg.state;
      spec.params[cfg.grid_param] = cfg.grid_values[g];
      const DensityMatrix rho = named_state(spec);
      for (std::size_t e = 0; e < cfg.ensembles.size(); ++e) {
        const std::uint64_t key = derive_seed(seed, {g, e, 0, 0});
        for (long k = 0; k < cfg.setting_counts[0]; ++k) {
          const SeedPath path{key, static_cast<std::uint64_t>(k)};
          const ShadowSnapshot s = draw_snapshot(rho, cfg.ensembles[e], path);
          json line;
          line["seed_path"] = {path.master, path.index};
          line["outcome"] = s.outcome;
          line["ensemble"] = to_string(s.ensemble);
          line["grid_value"] = cfg.grid_values[g];
          lines += line.dump() + "\n";
        }
      }
    }
    write_text(o.snapshots, lines, std::cout);
  }
  return r;
}

Result cmd_overlap(const Options& o) {
  const bool family = o.state.empty() && o.zoo.empty() && o.state2.empty() && o.zoo2.empty();
  const DensityMatrix rho1 = family ? named_state({"overlap_family", {{"p", 0.1}}}) : load_state(o.state, o.zoo, o.params);
  const DensityMatrix rho2 =
      family ? named_state({"overlap_family", {{"p", 0.9}}}) : load_state(o.state2, o.zoo2, o.params2);
  if (rho1.dims() != rho2.dims()) throw ValidationError("overlap: the two states have different dimensions");
  const std::uint64_t seed = require_seed(o, "overlap");
  const OverlapVariant variant = overlap_variant_from_string(o.variant);
  const int pd = variant == OverlapVariant::global ? static_cast<int>(rho1.dim()) : rho1.d();
  OverlapParams params;
  if (o.observable.empty()) params = default_overlap_params(pd, variant);
  else if (o.observable.size() == 4)
    params = validate_overlap_params(o.observable[0], o.observable[1], o.observable[2], o.observable[3], pd, variant);
  else
    throw ValidationError("overlap: --observable expects alpha1,alpha2,beta1,beta2");
  const long settings = o.settings < 0 ? 10000 : o.settings;
  const long runs = o.runs < 0 ? 1 : o.runs;

  json j;
  j["variant"] = to_string(variant);
  const double exact = trace_product(rho1.matrix(), rho2.matrix());
  if (o.fidelity) {
    const FidelityEstimate f = cross_platform_fidelity(rho1, rho2, params, settings, seed, o.threads);
    j["value"] = f.value;
    j["std_err"] = f.std_err;
    j["exact"] = exact / std::max(trace_product(rho1.matrix(), rho1.matrix()), trace_product(rho2.matrix(), rho2.matrix()));
    j["quantity"] = "fidelity";
  } else {
    std::vector<OverlapEstimate> reps;
    for (long k = 0; k < runs; ++k)
      reps.push_back(estimate_overlap(rho1, rho2, params, settings, o.shots,
                                      runs == 1 ? seed : derive_seed(seed, {static_cast<std::uint64_t>(k)}),
                                      o.threads));
    j["value"] = reps.front().value;
    j["std_err"] = reps.front().std_err;
    j["exact"] = exact;
    j["quantity"] = "overlap";
    j["assumption_violated"] = reps.front().assumption_violated;
    if (runs > 1) {
      double mean = 0.0, mae = 0.0;
      for (const auto& e : reps) {
        mean += e.value;
        mae += std::abs(e.value - exact);
      }
      j["n_runs"] = runs;
      j["mean_value"] = mean / runs;
      j["mean_abs_error"] = mae / runs;
    }
  }
  j["n_settings"] = settings;
  j["n_shots"] = o.shots;
  j["params"] = {{"alpha1", params.alpha1}, {"alpha2", params.alpha2}, {"beta1", params.beta1},
                 {"beta2", params.beta2},   {"d", params.d},           {"gamma", params.gamma},
                 {"eta", params.eta}};
  j["seed"] = seed;
  Result r;
  r.data = std::move(j);
  return r;
}

Result cmd_verify_haar(const Options& o) {
  const std::uint64_t seed = require_seed(o, "verify-haar");
  const HaarValidationReport rep = verify_haar_sampler(o.d, o.samples, seed, o.threads);
  json j;
  j["d"] = rep.d;
  j["n_samples"] = rep.n_samples;
  j["seed"] = rep.seed;
  j["pass"] = rep.pass();
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"operator_id", c.operator_id},
                      {"order", c.order},
                      {"max_abs_dev", c.max_abs_dev},
                      {"std_err", c.std_err},
                      {"max_z", c.max_z},
                      {"pass", c.pass}});
  j["checks"] = std::move(checks);
  Result r;
  r.data = std::move(j);
  return r;
}

namespace {

void add_state_flags(CLI::App* app, Options& o) {
  app->add_option("--state", o.state, "state file (JSON)");
  app->add_option("--zoo", o.zoo, "catalog state name instead of a file");
  app->add_option("--param", o.params, "catalog parameter k=v (repeatable)");
}

void add_output_flags(CLI::App* app, Options& o) {
  app->add_option("--out", o.out, "output path (stdout when omitted)");
  app->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--threads", o.threads, "worker cap, 0 = all cores")->check(CLI::NonNegativeNumber);
}

void add_seed(CLI::App* app, Options& o) {
  app->add_option_function<std::uint64_t>(
      "--seed",
      [&o](const std::uint64_t& s) {
        o.seed = s;
        o.has_seed = true;
      },
      "master seed");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Real randomized measurement toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(RRM_VERSION));

  auto* zoo = app.add_subcommand("zoo", "write a catalog or random state as a state file");
  zoo->add_option("name", o.name, "catalog name, or 'random'");
  zoo->add_flag("--list", o.list, "list catalog names");
  zoo->add_option("--param", o.params, "parameter k=v (repeatable)");
  zoo->add_option("--kind", o.random_kind, "random kind: pure_haar, mixed_hs, product, real_random");
  zoo->add_option("--d", o.d, "local dimension for random states");
  zoo->add_option("--n", o.n, "number of parties for random states");
  add_seed(zoo, o);
  add_output_flags(zoo, o);

  auto* moments = app.add_subcommand("moments", "exact or Monte-Carlo moment of a state");
  add_state_flags(moments, o);
  moments->add_option("--kind", o.kind, "RM, RRM or PRRM");
  moments->add_option("--t", o.t, "moment order");
  moments->add_option("--mode", o.mode, "exact or mc");
  moments->add_option("--settings", o.settings, "random settings (mc)");
  moments->add_option("--shots", o.shots, "shots per setting, 0 = exact expectations");
  add_seed(moments, o);
  add_output_flags(moments, o);

  auto* schmidt = app.add_subcommand("schmidt", "Schmidt-number certificate from (C2, C4)");
  add_state_flags(schmidt, o);
  schmidt->add_option("--c2", o.c2, "second moment");
  schmidt->add_option("--c4", o.c4, "fourth moment");
  schmidt->add_option("--d", o.d, "local dimension when moments are given directly");
  schmidt->add_option("--mode", o.mode, "exact or mc");
  schmidt->add_option("--settings", o.settings, "random settings (mc)");
  schmidt->add_option("--shots", o.shots, "shots per setting, 0 = exact expectations");
  add_seed(schmidt, o);
  add_output_flags(schmidt, o);

  auto* imag = app.add_subcommand("imaginarity", "imaginarity gaps, verdict and robustness");
  add_state_flags(imag, o);
  imag->add_option("--mode", o.mode, "exact or mc");
  imag->add_option("--settings", o.settings, "random settings (mc)");
  add_seed(imag, o);
  add_output_flags(imag, o);

  auto* shadow = app.add_subcommand("shadow", "fidelity error of classical shadows over a parameter grid");
  shadow->add_option("--zoo", o.zoo, "state family")->required();
  shadow->add_option("--param", o.params, "family parameter k=v (repeatable)");
  shadow->add_option("--grid-param", o.grid_param, "parameter swept by --grid");
  shadow->add_option("--grid", o.grid, "grid values")->delimiter(',');
  shadow->add_option("--ensemble", o.ensembles, "global_orthogonal, local_orthogonal, global_unitary, local_unitary")
      ->delimiter(',');
  shadow->add_option("--target", o.target, "ghz or max_entangled");
  shadow->add_option("--settings", o.settings, "snapshots per run");
  shadow->add_option("--runs", o.runs, "independent runs");
  shadow->add_option("--snapshots", o.snapshots, "write run-0 snapshots as JSON lines");
  add_seed(shadow, o);
  add_output_flags(shadow, o);

  auto* overlap = app.add_subcommand("overlap", "overlap or cross-platform fidelity of two states");
  add_state_flags(overlap, o);
  overlap->add_option("--state2", o.state2, "second state file");
  overlap->add_option("--zoo2", o.zoo2, "second catalog state");
  overlap->add_option("--param2", o.params2, "parameter of the second catalog state");
  overlap->add_option("--variant", o.variant, "local_combo, global or local_rrm_pti");
  overlap->add_option("--observable", o.observable, "alpha1,alpha2,beta1,beta2")->delimiter(',');
  overlap->add_flag("--fidelity", o.fidelity, "estimate tr(r1 r2)/max(tr r1^2, tr r2^2)");
  overlap->add_option("--settings", o.settings, "random settings");
  overlap->add_option("--shots", o.shots, "shots per setting, 0 = exact expectations");
  overlap->add_option("--runs", o.runs, "independent repetitions");
  add_seed(overlap, o);
  add_output_flags(overlap, o);

  auto* haar = app.add_subcommand("verify-haar", "Monte-Carlo check of the orthogonal moment formulas");
  haar->add_option("--d", o.d, "dimension");
  haar->add_option("--samples", o.samples, "number of samples");
  add_seed(haar, o);
  add_output_flags(haar, o);

  auto* table1 = app.add_subcommand("table1", "imaginarity table for the three two-qutrit states");
  add_output_flags(table1, o);

  auto* fig2 = app.add_subcommand("fig2", "two-qutrit (C2, C4) placements and Schmidt-number boundaries");
  fig2->add_option("--settings", o.settings, "also estimate moments with this many settings");
  fig2->add_option("--shots", o.shots, "shots per setting, 0 = exact expectations");
  add_seed(fig2, o);
  add_output_flags(fig2, o);

  auto* fig3a = app.add_subcommand("fig3a", "global shadows: fidelity error against p");
  fig3a->add_option("--grid", o.grid, "p values")->delimiter(',');
  fig3a->add_option("--settings", o.settings, "global settings per run");
  fig3a->add_option("--runs", o.runs, "runs per point");
  add_seed(fig3a, o);
  add_output_flags(fig3a, o);

  auto* fig3b = app.add_subcommand("fig3b", "local shadows: fidelity error against the number of settings");
  fig3b->add_option("--grid", o.grid, "setting counts")->delimiter(',');
  fig3b->add_option("--ensemble", o.ensembles, "local ensembles")->delimiter(',');
  fig3b->add_option("--runs", o.runs, "runs per point");
  add_seed(fig3b, o);
  add_output_flags(fig3b, o);

  auto* sfig1 = app.add_subcommand("sfig1", "Bell-diagonal and 4x4 placements with boundaries");
  add_output_flags(sfig1, o);

  auto* sfig1c = app.add_subcommand("sfig1c", "overlap error against the number of settings");
  sfig1c->add_option("--grid", o.grid, "setting counts")->delimiter(',');
  sfig1c->add_option("--runs", o.runs, "repetitions per point");
  add_seed(sfig1c, o);
  add_output_flags(sfig1c, o);

  auto* sfig2 = app.add_subcommand("sfig2", "chessboard (C2, C4) scatter for RM and RRM");
  sfig2->add_option("--settings", o.settings, "settings per point");
  sfig2->add_option("--points", o.points, "scatter points per protocol");
  sfig2->add_option("--shots", o.shots, "shots per setting, 0 = exact expectations");
  add_seed(sfig2, o);
  add_output_flags(sfig2, o);

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << RRM_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  const CLI::App* sub = app.get_subcommands().front();
  o.command = sub->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Result r;
    if (o.command == "zoo") r = cmd_zoo(o);
    else if (o.command == "moments") r = cmd_moments(o);
    else if (o.command == "schmidt") r = cmd_schmidt(o);
    else if (o.command == "imaginarity") r = cmd_imaginarity(o);
    else if (o.command == "shadow") r = cmd_shadow(o);
    else if (o.command == "overlap") r = cmd_overlap(o);
    else if (o.command == "verify-haar") r = cmd_verify_haar(o);
    else if (o.command == "table1") r = recipe_table1(o);
    else if (o.command == "fig2") r = recipe_fig2(o);
    else if (o.command == "fig3a") r = recipe_fig3a(o);
    else if (o.command == "fig3b") r = recipe_fig3b(o);
    else if (o.command == "sfig1") r = recipe_sfig1(o);
    else if (o.command == "sfig1c") r = recipe_sfig1c(o);
    else if (o.command == "sfig2") r = recipe_sfig2(o);

    const std::string fmt = o.format.empty() ? r.default_format : o.format;
    write_text(o.out, render(r.data, fmt), out);
    json outputs = json::array();
    if (!o.out.empty()) outputs.push_back(o.out);
    for (const auto& [tag, data] : r.companions) {
      if (o.out.empty()) {
        err << "note: " << tag << " output is written only with --out\n";
        continue;
      }
      const std::string path = companion_path(o.out, tag);
      write_text(path, render(data, fmt), out);
      outputs.push_back(path);
    }
    if (!o.out.empty()) {
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      json m;
      m["command"] = o.command;
      m["config"] = {{"args", std::vector<std::string>(args.begin() + 1, args.end())}, {"format", fmt}};
      m["seed"] = o.has_seed ? json(o.seed) : json(nullptr);
      m["versions"] = versions();
      m["wall_time_s"] = wall;
      m["timestamp"] = static_cast<long long>(std::time(nullptr));
      m["outputs"] = std::move(outputs);
      write_text(o.out + ".manifest.json", m.dump(2) + "\n", out);
    }
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace rrm::cli
