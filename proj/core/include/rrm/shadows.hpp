#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrm/random.hpp"
#include "rrm/state.hpp"
#include "rrm/zoo.hpp"

namespace rrm {

enum class Ensemble { global_orthogonal, local_orthogonal, global_unitary, local_unitary };

std::string to_string(Ensemble e);
Ensemble ensemble_from_string(const std::string& s);
bool is_local(Ensemble e);
bool is_orthogonal(Ensemble e);

enum class ChannelDirection { forward, inverse };

// Forward: (tr X · I + X + X^T)/(D+2). Inverse: ((D+2)X - tr X · I)/2.
CMatrix global_orthogonal_channel(const CMatrix& x, ChannelDirection dir, const DimSpec& dims);

// The single-site maps above applied on every site in turn.
CMatrix local_orthogonal_channel(const CMatrix& x, ChannelDirection dir, const DimSpec& dims);

struct ShadowSnapshot {
  Ensemble ensemble = Ensemble::global_orthogonal;
  SeedPath seed_path;
  std::vector<int> outcome;  // one entry (global) or one per site (local)
  DimSpec dims;
  // Global: v = O^T|b⟩ (or U^†|b⟩). Local: one such vector per site.
  std::vector<CVector> factors;
  // Set when the state breaks the ensemble's unbiasedness condition.
  bool assumption_violated = false;

  CMatrix matrix() const;
  double expectation(const CMatrix& g) const;
  double fidelity(const CVector& psi) const;  // ⟨ψ|snapshot|ψ⟩
};

ShadowSnapshot draw_snapshot(const DensityMatrix& rho, Ensemble ensemble, const SeedPath& path);

struct ObservableEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  long n = 0;
};

ObservableEstimate estimate_observable(const std::vector<ShadowSnapshot>& shadows, const CMatrix& g);

struct ShadowExperimentConfig {
  StateSpec state;                     // family evaluated at each grid value
  std::string grid_param = "p";        // parameter of `state` swept by grid_values
  std::vector<double> grid_values;
  std::vector<long> setting_counts;    // one or more n_settings values
  std::vector<Ensemble> ensembles;
  CVector target;                      // pure target state for the fidelity
  long n_runs = 1;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ShadowGridPoint {
  double grid_value = 0.0;
  Ensemble ensemble = Ensemble::global_orthogonal;
  long n_settings = 0;
  long n_runs = 0;
  double mean_error = 0.0;     // run average of |f_es - f_ex|
  double std = 0.0;            // run standard deviation of |f_es - f_ex|
  double mean_estimate = 0.0;  // run average of f_es
  double exact = 0.0;          // f_ex
  bool assumption_violated = false;
};

std::vector<ShadowGridPoint> fidelity_error_experiment(const ShadowExperimentConfig& config);

}  // namespace rrm
