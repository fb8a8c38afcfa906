#include "rrm/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rrm/linalg.hpp"
#include "rrm/moments.hpp"

namespace rrm {

namespace {

void check_args(int x, double y, int d) {
  if (d < 2 || d > 7) throw ValidationError("f_min: d must be in [2, 7], got " + std::to_string(d));
  if (x < 1 || x > d) throw ValidationError("f_min: x must be in [1, d], got " + std::to_string(x));
  if (!(y >= 0.0)) throw ValidationError("f_min: y must be >= 0");
}

}  // namespace

double f_min_cap(int x, int d) {
  const double L = (d - 1) * (d + 2) / 2;
  const double c = d * x - 1.0;
  return c * c / (L * L);
}

int f_min_branch_index(int x, double y, int d) {
  check_args(x, y, d);
  const int L = (d - 1) * (d + 2) / 2;
  const double c = d * x - 1.0;
  if (y <= c * c / (static_cast<double>(L) * L * L)) return 0;
  const double s = static_cast<double>(L) * L * y;
  const int ng = static_cast<int>(std::floor(c * c / s));
  return std::clamp(ng, 1, L - 1);
}

double f_min_branch(int x, double y, int d, int branch) {
  check_args(x, y, d);
  const MomentConstants k = moment_constants(d);
  const double L = k.L;
  if (branch == 0) return k.W * L * L * L * y * y * (2.0 + L);
  if (branch < 1 || branch > k.L - 1) throw ValidationError("f_min_branch: branch out of range");
  const double c = d * x - 1.0;
  const double s = L * L * y;
  const double ng = branch;
  double rad = ng * (ng + 1.0) * s - ng * c * c;
  if (rad < 0.0) {
    if (rad < -1e-9 * std::max(1.0, ng * c * c)) throw ValidationError("f_min_branch: y below the branch range");
    rad = 0.0;
  }
  const double b = std::sqrt(rad);
  const double f = std::pow(b - c, 4) + std::pow(b + ng * c, 4) / (ng * ng * ng);
  return 2.0 * k.W * f / std::pow(ng + 1.0, 4) + k.W * L * L * L * L * y * y;
}

std::optional<double> f_min(int x, double y, int d) {
  check_args(x, y, d);
  const double cap = f_min_cap(x, d);
  if (y > cap * (1.0 + 1e-12)) return std::nullopt;
  return f_min_branch(x, std::min(y, cap), d, f_min_branch_index(x, std::min(y, cap), d));
}

std::vector<BranchBoundary> f_min_boundaries(int x, int d) {
  check_args(x, 0.0, d);
  const int L = (d - 1) * (d + 2) / 2;
  const double c = d * x - 1.0;
  const double L2 = static_cast<double>(L) * L;
  std::vector<BranchBoundary> out;
  out.push_back({c * c / (L2 * L), 0, L - 1});
  for (int k = L - 1; k >= 2; --k) out.push_back({c * c / (L2 * k), k, k - 1});
  return out;
}

SchmidtVerdict schmidt_verdict(double C2, double C4, int d) {
  if (C2 < 0.0 || C4 < 0.0) throw ValidationError("schmidt_verdict: moments must be >= 0");
  SchmidtVerdict v;
  v.C2 = C2;
  v.C4 = C4;
  v.d = d;
  for (int x = 1; x <= d; ++x) v.f_min_values.emplace_back(x, f_min(x, C2, d));

  for (int r = d; r >= 2; --r) {
    const int x = r - 1;
    if (C2 > f_min_cap(x, d)) {
      v.certified_sn_lower_bound = r;
      v.fired_rule = SchmidtRule::second_moment_only;
      break;
    }
    const auto f = v.f_min_values[x - 1].second;
    if (f && C4 < *f - kBoundaryTol) {
      v.certified_sn_lower_bound = r;
      v.fired_rule = SchmidtRule::fourth_moment;
      break;
    }
  }
  for (int r = v.certified_sn_lower_bound + 1; r <= d; ++r) {
    const auto f = v.f_min_values[r - 2].second;
    if (f && std::abs(C4 - *f) <= kBoundaryTol) v.boundary_flag = true;
  }
  return v;
}

int trace_norm_sn_bound(const CorrelationTensor& t) {
  if (t.dims().n != 2) throw ValidationError("trace_norm_sn_bound: bipartite tensor required");
  const int d = t.dims().d;
  const int m = d * d - 1;
  const double norm = singular_values(RMatrix(t.block(1, m, 1, m))).sum();
  int best = 0;
  for (int r = 1; r <= d; ++r)
    if (norm > r * d - 1.0 + kBoundaryTol) best = r;
  return best;
}

SeparabilityCheck multipartite_separability_check(double Q2, int d, int n) {
  if (d < 2) throw ValidationError("separability check: d must be >= 2");
  if (n < 2) throw ValidationError("separability check: n must be >= 2");
  SeparabilityCheck c;
  c.bound = std::pow(2.0 / (d + 2.0), n);
  c.violated = Q2 > c.bound + tol::num;
  return c;
}

}  // namespace rrm
