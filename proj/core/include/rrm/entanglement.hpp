#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rrm/correlation.hpp"

namespace rrm {

// Largest C2 reachable by a state with Schmidt number <= x: (dx-1)²/L².
double f_min_cap(int x, int d);

// Minimal fourth moment for Schmidt number <= x at second moment y. Empty
// when y exceeds f_min_cap (no such state exists).
std::optional<double> f_min(int x, double y, int d);

// Branch selector used by f_min: 0 for the uniform branch, otherwise n_g.
int f_min_branch_index(int x, double y, int d);

// Evaluates one branch formula regardless of where y lies.
double f_min_branch(int x, double y, int d, int branch);

// y-values where f_min switches branch, paired with the branch on each side.
struct BranchBoundary {
  double y = 0.0;
  int lower_branch = 0;  // branch used just below y
  int upper_branch = 0;  // branch used at and above y
};
std::vector<BranchBoundary> f_min_boundaries(int x, int d);

// Direct numerical minimisation of W[2Στ⁴ + L⁴y²] over τ in [0, d-1]^L with
// Στ² = L²y and Στ <= xd-1. Does not call f_min.
double f_min_oracle(int x, double y, int d, int starts = 100, std::uint64_t seed = 0x5eed);

enum class SchmidtRule { none, second_moment_only, fourth_moment };

struct SchmidtVerdict {
  double C2 = 0.0;
  double C4 = 0.0;
  int d = 0;
  int certified_sn_lower_bound = 1;
  SchmidtRule fired_rule = SchmidtRule::none;
  bool boundary_flag = false;
  std::vector<std::pair<int, std::optional<double>>> f_min_values;  // x = 1..d
};

inline constexpr double kBoundaryTol = 1e-9;

SchmidtVerdict schmidt_verdict(double C2, double C4, int d);

// Largest r with ||T||_tr > rd - 1 over the (d²-1)×(d²-1) block, 0 if none.
int trace_norm_sn_bound(const CorrelationTensor& t);

struct SeparabilityCheck {
  double bound = 0.0;
  bool violated = false;
};

SeparabilityCheck multipartite_separability_check(double Q2, int d, int n);

}  // namespace rrm
