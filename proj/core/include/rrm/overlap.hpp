#pragma once

#include <cstdint>
#include <string>

#include "rrm/state.hpp"

namespace rrm {

enum class OverlapVariant { local_combo, global, local_rrm_pti };

std::string to_string(OverlapVariant v);
OverlapVariant overlap_variant_from_string(const std::string& s);

struct OverlapParams {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  int d = 0;  // site dimension for local variants, total dimension for global
  double gamma = 0.0;
  double eta = 0.0;
  OverlapVariant variant = OverlapVariant::local_combo;
};

OverlapParams validate_overlap_params(double alpha1, double alpha2, double beta1, double beta2,
                                      int d, OverlapVariant variant);

// (α1, α2, β1) = (0, 1, 1) with β2 = -(d+1)/(d-1) solving the constraint.
OverlapParams default_overlap_params(int d, OverlapVariant variant);

struct OverlapEstimate {
  double value = 0.0;
  double std_err = 0.0;
  long n_settings = 0;
  long n_shots = 0;
  OverlapVariant variant = OverlapVariant::local_combo;
  bool assumption_violated = false;  // ρ2 not real (or not PTI for local_rrm_pti)
};

// Uses params as given; the constraint is enforced by validate_overlap_params.
OverlapEstimate estimate_overlap(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                 const OverlapParams& params, long n_settings, long n_shots,
                                 std::uint64_t seed, int threads = 1);

struct FidelityEstimate {
  double value = 0.0;
  double std_err = 0.0;
  OverlapEstimate overlap;
  OverlapEstimate purity1;
  OverlapEstimate purity2;
};

// tr(ρ1ρ2)/max{tr ρ1², tr ρ2²} from three independent overlap estimates.
FidelityEstimate cross_platform_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                         const OverlapParams& params, long n_settings,
                                         std::uint64_t seed, int threads = 1);

}  // namespace rrm
