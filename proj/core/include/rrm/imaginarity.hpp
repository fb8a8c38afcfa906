#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rrm/state.hpp"

namespace rrm {

struct ImaginarityGaps {
  double QhatA = 0.0;
  double QhatB = 0.0;
  double G_A = 0.0;
  double G_B = 0.0;
  double G_AB = 0.0;
  int d = 0;
};

ImaginarityGaps imaginarity_gaps(const DensityMatrix& rho);

enum class ImagCondition { marginal_A, marginal_B, correlation };
std::string to_string(ImagCondition c);

inline constexpr double kGapTol = 1e-8;

struct ImaginarityVerdict {
  bool is_imaginary = false;
  std::vector<ImagCondition> fired_conditions;
  double f_lb = 0.0;
  std::optional<double> f_r_exact;
  std::optional<bool> state_is_real;  // from diagnostics when a state is given
  bool consistent = true;             // verdict agrees with state_is_real
};

ImaginarityVerdict imaginarity_verdict(const ImaginarityGaps& gaps,
                                       const DensityMatrix* rho = nullptr);

// (1/d)√(L̂(Q̂_A + Q̂_B) + G_AB)
double robustness_lower_bound(const ImaginarityGaps& gaps, int d);

// ½||ρ - ρ^T||_tr
double robustness_exact(const DensityMatrix& rho);

// Gaps estimated from simulated RM, RRM and PRRM second moments, each with a
// propagated standard error.
struct EstimatedGaps {
  ImaginarityGaps value;
  double QhatA_se = 0.0;
  double QhatB_se = 0.0;
  double G_AB_se = 0.0;
  long n_settings = 0;
  std::uint64_t seed = 0;
};

EstimatedGaps estimate_imaginarity_gaps_mc(const DensityMatrix& rho, long n_settings,
                                           std::uint64_t seed, int threads = 1);

// A condition fires only when the estimate exceeds 3 standard errors.
ImaginarityVerdict imaginarity_verdict(const EstimatedGaps& gaps);

struct BlockVerdict {
  std::vector<int> parties;  // 0-based
  long block_dim = 0;
  double gap = 0.0;
  bool fires = false;
};

struct ImaginarityScan {
  std::vector<BlockVerdict> blocks;
  bool certified_imaginary = false;
};

// Each block is treated as a single system of dimension d^{|block|}.
ImaginarityScan multipartite_imaginarity_scan(const DensityMatrix& rho,
                                              const std::vector<std::vector<int>>& partition);

}  // namespace rrm
