#include "rrm/imaginarity.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "rrm/correlation.hpp"
#include "rrm/diagnostics.hpp"
#include "rrm/linalg.hpp"
#include "rrm/moments.hpp"

namespace rrm {

std::string to_string(ImagCondition c) {
  switch (c) {
    case ImagCondition::marginal_A: return "marginal_A";
    case ImagCondition::marginal_B: return "marginal_B";
    case ImagCondition::correlation: return "correlation";
  }
  return "?";
}

namespace {

// (d²-1)R - L·Q of a single system: the imaginary-sector weight of its Bloch vector.
double single_system_gap(const DensityMatrix& rho) {
  const SectorMoments m = exact_sector_moments(correlation_tensor(rho));
  const int d = rho.d();
  const double L = (d - 1) * (d + 2) / 2;
  return (d * d - 1.0) * m.R2 - L * m.Q2;
}

}  // namespace

ImaginarityGaps imaginarity_gaps(const DensityMatrix& rho) {
  if (rho.n() != 2) throw ValidationError("imaginarity_gaps: bipartite state required");
  const int d = rho.d();
  const GGMBasis basis = ggm_basis(d);
  const CorrelationTensor t = correlation_tensor(rho, basis);
  const int L = basis.L;
  const int Lhat = basis.Lhat;
  const int b = basis.size();

  ImaginarityGaps g;
  g.d = d;
  double cross = 0.0;
  for (int j = 1; j < b; ++j) {
    if (j > L) {
      g.QhatA += t.at(j, 0) * t.at(j, 0);
      g.QhatB += t.at(0, j) * t.at(0, j);
    }
    for (int k = 1; k < b; ++k)
      if ((j <= L) != (k <= L)) cross += t.at(j, k) * t.at(j, k);
  }
  g.QhatA /= Lhat;
  g.QhatB /= Lhat;
  g.G_AB = cross;

  g.G_A = single_system_gap(partial_trace(rho, {0}));
  g.G_B = single_system_gap(partial_trace(rho, {1}));

  // Both routes must agree: the marginal gap is the marginal PRRM moment
  // times L̂, and the cross-sector sum is the normalised moment combination.
  const SectorMoments m = exact_sector_moments(t);
  const double combo = std::pow(d * d - 1.0, 2) * m.R2 - std::pow(L, 2.0) * m.Q2 - std::pow(Lhat, 2.0) * m.Qhat2;
  if (std::abs(g.G_A - Lhat * g.QhatA) > 1e-10 || std::abs(g.G_B - Lhat * g.QhatB) > 1e-10 ||
      std::abs(combo - g.G_AB) > 1e-10 * std::max(1.0, std::abs(combo)))
    throw std::logic_error("imaginarity_gaps: sector identities violated");
  return g;
}

double robustness_lower_bound(const ImaginarityGaps& gaps, int d) {
  if (d < 2) throw ValidationError("robustness_lower_bound: d must be >= 2");
  const double Lhat = d * (d - 1) / 2;
  const double rad = Lhat * (gaps.QhatA + gaps.QhatB) + gaps.G_AB;
  if (rad < -tol::num) throw ValidationError("robustness_lower_bound: negative radicand " + std::to_string(rad));
  return std::sqrt(std::max(0.0, rad)) / d;
}

double robustness_exact(const DensityMatrix& rho) {
  return 0.5 * trace_norm(rho.matrix() - rho.matrix().transpose());
}

ImaginarityVerdict imaginarity_verdict(const ImaginarityGaps& gaps, const DensityMatrix* rho) {
  ImaginarityVerdict v;
  if (gaps.G_A > kGapTol) v.fired_conditions.push_back(ImagCondition::marginal_A);
  if (gaps.G_B > kGapTol) v.fired_conditions.push_back(ImagCondition::marginal_B);
  if (gaps.G_AB > kGapTol) v.fired_conditions.push_back(ImagCondition::correlation);
  v.is_imaginary = !v.fired_conditions.empty();
  v.f_lb = robustness_lower_bound(gaps, gaps.d);
  if (rho) {
    v.f_r_exact = robustness_exact(*rho);
    v.state_is_real = diagnostics(*rho).is_real;
    v.consistent = v.is_imaginary != *v.state_is_real;
  }
  return v;
}

EstimatedGaps estimate_imaginarity_gaps_mc(const DensityMatrix& rho, long n_settings, std::uint64_t seed,
                                           int threads) {
  if (rho.n() != 2) throw ValidationError("estimate_imaginarity_gaps_mc: bipartite state required");
  const int d = rho.d();
  const double L = (d - 1) * (d + 2) / 2;
  const double Lhat = d * (d - 1) / 2;
  const double D1 = d * d - 1.0;
  const auto r = estimate_moment_mc(rho, Protocol::RM, 2, n_settings, 0, derive_seed(seed, {1}), threads);
  const auto q = estimate_moment_mc(rho, Protocol::RRM, 2, n_settings, 0, derive_seed(seed, {2}), threads);
  const auto qh = estimate_moment_mc(rho, Protocol::PRRM, 2, n_settings, 0, derive_seed(seed, {3}), threads);
  const auto qa = estimate_moment_mc(partial_trace(rho, {0}), Protocol::PRRM, 2, n_settings, 0,
                                     derive_seed(seed, {4}), threads);
  const auto qb = estimate_moment_mc(partial_trace(rho, {1}), Protocol::PRRM, 2, n_settings, 0,
                                     derive_seed(seed, {5}), threads);
  EstimatedGaps e;
  e.n_settings = n_settings;
  e.seed = seed;
  e.value.d = d;
  e.value.QhatA = qa.value;
  e.value.QhatB = qb.value;
  e.value.G_A = Lhat * qa.value;
  e.value.G_B = Lhat * qb.value;
  e.value.G_AB = D1 * D1 * r.value - L * L * q.value - Lhat * Lhat * qh.value;
  e.QhatA_se = qa.std_err;
  e.QhatB_se = qb.std_err;
  e.G_AB_se = std::sqrt(std::pow(D1 * D1 * r.std_err, 2) + std::pow(L * L * q.std_err, 2) +
                        std::pow(Lhat * Lhat * qh.std_err, 2));
  return e;
}

ImaginarityVerdict imaginarity_verdict(const EstimatedGaps& e) {
  const double Lhat = e.value.d * (e.value.d - 1) / 2;
  ImaginarityVerdict v;
  auto significant = [](double value, double se) { return value > std::max(kGapTol, 3.0 * se); };
  if (significant(e.value.G_A, Lhat * e.QhatA_se)) v.fired_conditions.push_back(ImagCondition::marginal_A);
  if (significant(e.value.G_B, Lhat * e.QhatB_se)) v.fired_conditions.push_back(ImagCondition::marginal_B);
  if (significant(e.value.G_AB, e.G_AB_se)) v.fired_conditions.push_back(ImagCondition::correlation);
  v.is_imaginary = !v.fired_conditions.empty();
  ImaginarityGaps clipped = e.value;
  clipped.QhatA = std::max(0.0, clipped.QhatA);
  clipped.QhatB = std::max(0.0, clipped.QhatB);
  clipped.G_AB = std::max(0.0, clipped.G_AB);
  v.f_lb = robustness_lower_bound(clipped, e.value.d);
  return v;
}

ImaginarityScan multipartite_imaginarity_scan(const DensityMatrix& rho,
                                              const std::vector<std::vector<int>>& partition) {
  std::set<int> seen;
  for (const auto& block : partition) {
    if (block.empty()) throw ValidationError("imaginarity scan: empty block");
    for (int p : block) {
      if (p < 0 || p >= rho.n()) throw ValidationError("imaginarity scan: party " + std::to_string(p) + " out of range");
      if (!seen.insert(p).second) throw ValidationError("imaginarity scan: blocks overlap at party " + std::to_string(p));
    }
  }
  ImaginarityScan scan;
  for (const auto& block : partition) {
    BlockVerdict bv;
    bv.parties = block;
    std::sort(bv.parties.begin(), bv.parties.end());
    const CMatrix marginal = partial_trace(rho.matrix(), rho.dims(), bv.parties);
    bv.block_dim = marginal.rows();
    if (bv.block_dim > 64) throw ValidationError("imaginarity scan: block dimension exceeds 64");
    const DensityMatrix composite(marginal, DimSpec{static_cast<int>(bv.block_dim), 1});
    bv.gap = single_system_gap(composite);
    bv.fires = bv.gap > kGapTol;
    scan.certified_imaginary |= bv.fires;
    scan.blocks.push_back(bv);
  }
  return scan;
}

}  // namespace rrm
