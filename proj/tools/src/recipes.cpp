#include <cmath>

#include "commands.hpp"
#include "rrm/rrm.hpp"

namespace rrm::cli {

namespace {

const std::vector<double> kFig2Params = {1.0, 0.9, 0.8, 0.7, 0.6};

struct Moments2 {
  double C2 = 0.0;
  double C4 = 0.0;
};

Moments2 exact_c2_c4(const CorrelationTensor& t) { return {exact_sector_moments(t).Q2, exact_fourth_moment(t)}; }

json placement_row(const std::string& id, double param, const Moments2& m, int d) {
  const SchmidtVerdict v = schmidt_verdict(std::max(0.0, m.C2), std::max(0.0, m.C4), d);
  json row;
  row["state_id"] = id;
  row["p_or_u"] = param;
  row["C2"] = m.C2;
  row["C4"] = m.C4;
  row["sn_bound"] = v.certified_sn_lower_bound;
  row["boundary_flag"] = v.boundary_flag;
  return row;
}

json boundary_curves(int d, int points) {
  json rows = json::array();
  for (int x = 1; x <= d; ++x) {
    const double cap = f_min_cap(x, d);
    for (int i = 0; i < points; ++i) {
      const double y = cap * i / (points - 1.0);
      const auto f = f_min(x, y, d);
      rows.push_back({{"d", d}, {"x", x}, {"C2", y}, {"F_min", f ? json(*f) : json(nullptr)}});
    }
  }
  return rows;
}

// Mixture u·ρ0 + (1-u)·I/9 built from the operator itself, so that a non-PSD
// ρ0 still yields a row.
CMatrix rho_u_operator(double u) {
  const CMatrix& r0 = rho0_candidates().front().matrix;
  return u * r0 + (1.0 - u) * CMatrix::Identity(9, 9) / 9.0;
}

std::vector<long> to_counts(const std::vector<double>& grid) {
  std::vector<long> out;
  for (double g : grid) {
    if (g < 1.0 || g != std::floor(g)) throw ValidationError("setting counts must be positive integers");
    out.push_back(static_cast<long>(g));
  }
  return out;
}

}  // namespace

Result recipe_table1(const Options&) {
  Result r;
  r.data = json::array();
  for (int k = 1; k <= 3; ++k) {
    const DensityMatrix rho = named_state({"table1", {{"k", k}}});
    const ImaginarityGaps g = imaginarity_gaps(rho);
    const ImaginarityVerdict v = imaginarity_verdict(g, &rho);
    json row;
    row["state"] = k;
    row["QhatA"] = g.QhatA;
    row["QhatB"] = g.QhatB;
    row["G_AB"] = g.G_AB;
    row["F_LB"] = robustness_lower_bound(g, rho.d());
    row["F_R"] = robustness_exact(rho);
    row["verdict"] = v.is_imaginary ? "imaginary" : "not_detected";
    r.data.push_back(std::move(row));
  }
  return r;
}

Result recipe_fig2(const Options& o) {
  const long settings = o.settings < 0 ? 0 : o.settings;
  const std::uint64_t seed = settings > 0 ? require_seed(o, "fig2 with --settings") : 0;
  const GGMBasis basis = ggm_basis(3);
  Result r;
  r.default_format = "csv";
  r.data = json::array();

  std::uint64_t row_index = 0;
  auto add = [&](const std::string& id, double param, const CMatrix& m) {
    const StateCheck check = check_state(m);
    json row = placement_row(id, param, exact_c2_c4(correlation_tensor(m, {3, 2}, basis)), 3);
    row["valid_state"] = check.ok();
    row["min_eigenvalue"] = check.min_eigenvalue;
    if (settings > 0) {
      json c2 = nullptr, c2se = nullptr, c4 = nullptr, c4se = nullptr;
      if (check.ok()) {
        const DensityMatrix rho(m, {3, 2});
        const std::uint64_t s = derive_seed(seed, {row_index});
        const auto m2 = estimate_moment_mc(rho, Protocol::RRM, 2, settings, o.shots, s, o.threads);
        const auto m4 = estimate_moment_mc(rho, Protocol::RRM, 4, settings, o.shots, s, o.threads);
        c2 = m2.value;
        c2se = m2.std_err;
        c4 = m4.value;
        c4se = m4.std_err;
      }
      row["C2_mc"] = c2;
      row["C2_std_err"] = c2se;
      row["C4_mc"] = c4;
      row["C4_std_err"] = c4se;
    }
    ++row_index;
    r.data.push_back(std::move(row));
  };

  for (double p : kFig2Params) add("isotropic", p, named_state({"isotropic", {{"d", 3}, {"p", p}}}).matrix());
  for (double u : kFig2Params) add("rho_u", u, rho_u_operator(u));
  add("upb_tiles", 1.0, named_state({"upb_tiles", {}}).matrix());
  add("chessboard", 1.0, named_state({"chessboard", {}}).matrix());

  r.companions.push_back({"boundaries", boundary_curves(3, 200)});
  return r;
}

Result recipe_sfig1(const Options&) {
  Result r;
  r.default_format = "csv";
  r.data = json::array();
  for (int k = 1; k <= 4; ++k) {
    const DensityMatrix rho = named_state({"bell", {{"k", k}}});
    json row = placement_row("P" + std::to_string(k), k, exact_c2_c4(correlation_tensor(rho)), 3);
    row["panel"] = "a";
    r.data.push_back(std::move(row));
  }
  for (double p : kFig2Params) {
    const DensityMatrix rho = named_state({"isotropic", {{"d", 4}, {"p", p}}});
    json row = placement_row("isotropic", p, exact_c2_c4(correlation_tensor(rho)), 4);
    row["panel"] = "b";
    r.data.push_back(std::move(row));
  }
  {
    const DensityMatrix rho = named_state({"piani", {}});
    json row = placement_row("piani", 1.0, exact_c2_c4(correlation_tensor(rho)), 4);
    row["panel"] = "b";
    r.data.push_back(std::move(row));
  }
  json curves = boundary_curves(3, 200);
  for (auto& row : boundary_curves(4, 200)) curves.push_back(row);
  r.companions.push_back({"boundaries", std::move(curves)});
  return r;
}

Result recipe_fig3a(const Options& o) {
  ShadowExperimentConfig cfg;
  cfg.state = {"noisy_ghz", {{"n", 5}}};
  cfg.grid_param = "p";
  cfg.grid_values = o.grid.empty() ? std::vector<double>{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0} : o.grid;
  cfg.setting_counts = {o.settings < 0 ? 2000 : o.settings};
  cfg.ensembles = {Ensemble::global_orthogonal, Ensemble::global_unitary};
  cfg.target = ghz_vector(5, 1);
  cfg.n_runs = o.runs < 0 ? 100 : o.runs;
  cfg.seed = require_seed(o, "fig3a");
  cfg.threads = o.threads;
  Result r;
  r.default_format = "csv";
  r.data = shadow_table(fidelity_error_experiment(cfg), cfg.seed);
  return r;
}

Result recipe_fig3b(const Options& o) {
  ShadowExperimentConfig cfg;
  cfg.state = {"noisy_ghz", {{"n", 5}}};
  cfg.grid_param = "p";
  cfg.grid_values = {0.5};
  cfg.setting_counts = o.grid.empty() ? std::vector<long>{100, 300, 1000, 3000, 10000} : to_counts(o.grid);
  if (o.ensembles.empty()) {
    cfg.ensembles = {Ensemble::local_orthogonal, Ensemble::local_unitary};
  } else {
    for (const auto& e : o.ensembles) cfg.ensembles.push_back(ensemble_from_string(e));
  }
  cfg.target = ghz_vector(5, 1);
  cfg.n_runs = o.runs < 0 ? 100 : o.runs;
  cfg.seed = require_seed(o, "fig3b");
  cfg.threads = o.threads;
  Result r;
  r.default_format = "csv";
  r.data = shadow_table(fidelity_error_experiment(cfg), cfg.seed);
  return r;
}

Result recipe_sfig1c(const Options& o) {
  const std::uint64_t seed = require_seed(o, "sfig1c");
  const std::vector<long> grid =
      o.grid.empty() ? std::vector<long>{10, 32, 100, 316, 1000, 3162, 10000} : to_counts(o.grid);
  const long runs = o.runs < 0 ? 100 : o.runs;
  const DensityMatrix rho1 = named_state({"overlap_family", {{"p", 0.1}}});
  const DensityMatrix rho2 = named_state({"overlap_family", {{"p", 0.9}}});
  const OverlapParams params = validate_overlap_params(0.0, 1.0, 1.0, -1.5, 5, OverlapVariant::local_combo);
  const double exact = (rho1.matrix() * rho2.matrix()).trace().real();
  Result r;
  r.default_format = "csv";
  r.data = json::array();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::vector<double> err(runs);
    double mean = 0.0;
    for (long k = 0; k < runs; ++k) {
      const OverlapEstimate e = estimate_overlap(rho1, rho2, params, grid[g], 0,
                                                 derive_seed(seed, {g, static_cast<std::uint64_t>(k)}), o.threads);
      err[k] = std::abs(e.value - exact);
      mean += e.value;
    }
    double mae = 0.0;
    for (double x : err) mae += x;
    mae /= runs;
    double ss = 0.0;
    for (double x : err) ss += (x - mae) * (x - mae);
    json row;
    row["n_settings"] = grid[g];
    row["mean_abs_error"] = mae;
    row["std_err"] = runs > 1 ? std::sqrt(ss / (runs - 1.0) / runs) : 0.0;
    row["mean_estimate"] = mean / runs;
    row["exact"] = exact;
    row["n_runs"] = runs;
    row["seed"] = seed;
    r.data.push_back(std::move(row));
  }
  return r;
}

Result recipe_sfig2(const Options& o) {
  const std::uint64_t seed = require_seed(o, "sfig2");
  const long settings = o.settings < 0 ? 1000 : o.settings;
  const long points = o.points < 0 ? 100 : o.points;
  const DensityMatrix rho = named_state({"chessboard", {}});
  const CorrelationTensor t = correlation_tensor(rho);
  const SectorMoments s = exact_sector_moments(t);
  Result r;
  r.default_format = "csv";
  r.data = json::array();
  const std::vector<Protocol> protocols = {Protocol::RM, Protocol::RRM};
  for (std::size_t pi = 0; pi < protocols.size(); ++pi) {
    const Protocol p = protocols[pi];
    const double exact_c2 = p == Protocol::RM ? s.R2 : s.Q2;
    const json exact_c4 = p == Protocol::RRM ? json(exact_fourth_moment(t)) : json(nullptr);
    for (long i = 0; i < points; ++i) {
      const std::uint64_t key = derive_seed(seed, {pi, static_cast<std::uint64_t>(i)});
      const auto m2 = estimate_moment_mc(rho, p, 2, settings, o.shots, key, o.threads);
      const auto m4 = estimate_moment_mc(rho, p, 4, settings, o.shots, key, o.threads);
      json row;
      row["protocol"] = to_string(p);
      row["point"] = i;
      row["C2"] = m2.value;
      row["C4"] = m4.value;
      row["exact_C2"] = exact_c2;
      row["exact_C4"] = exact_c4;
      if (p == Protocol::RRM)
        row["detected"] =
            schmidt_verdict(std::max(0.0, m2.value), std::max(0.0, m4.value), 3).certified_sn_lower_bound >= 2;
      else
        row["detected"] = nullptr;
      row["n_settings"] = settings;
      row["seed"] = seed;
      r.data.push_back(std::move(row));
    }
  }
  return r;
}

}  // namespace rrm::cli
