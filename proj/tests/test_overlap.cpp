#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rrm/rrm.hpp"

using namespace rrm;

namespace {

DensityMatrix family(double p) { return named_state({"overlap_family", {{"p", p}}}); }

double exact_overlap(const DensityMatrix& a, const DensityMatrix& b) {
  return (a.matrix() * b.matrix()).trace().real();
}

// Mean of `reps` independent estimates and the combined standard error.
std::pair<double, double> repeated(const DensityMatrix& a, const DensityMatrix& b, const OverlapParams& p,
                                   int reps, long settings, std::uint64_t seed) {
  double sum = 0.0, var = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto e = estimate_overlap(a, b, p, settings, 0, derive_seed(seed, {static_cast<std::uint64_t>(r)}));
    sum += e.value;
    var += e.std_err * e.std_err;
  }
  return {sum / reps, std::sqrt(var) / reps};
}

}  // namespace

TEST(OverlapParams, Examples) {
  const auto p = validate_overlap_params(0, 1, 1, -1.5, 5, OverlapVariant::local_combo);
  EXPECT_NEAR(p.gamma, -0.05, 1e-15);
  EXPECT_NEAR(p.eta, 0.1, 1e-15);
  EXPECT_THROW(validate_overlap_params(1, 1, 1, 1, 3, OverlapVariant::local_combo), ValidationError);
  const auto q = validate_overlap_params(0, 1, 1, -2, 3, OverlapVariant::local_combo);
  EXPECT_NEAR(q.gamma, (1.0 - 6.0) / 30.0, 1e-15);
  const auto dflt = default_overlap_params(5, OverlapVariant::local_combo);
  EXPECT_DOUBLE_EQ(dflt.beta2, -1.5);
  EXPECT_DOUBLE_EQ(default_overlap_params(3, OverlapVariant::global).beta2, -2.0);
  // Satisfies the constraint trivially but leaves γ = 0.
  EXPECT_THROW(validate_overlap_params(1, 0, 0, 0, 3, OverlapVariant::local_combo), ValidationError);
  EXPECT_EQ(overlap_variant_from_string("local_rrm_pti"), OverlapVariant::local_rrm_pti);
}

TEST(Overlap, FiveByFiveExample) {
  const auto p = default_overlap_params(5, OverlapVariant::local_combo);
  const DensityMatrix a = family(0.1), b = family(0.9);
  EXPECT_NEAR(exact_overlap(a, b), 0.1264, 1e-12);
  const auto e = estimate_overlap(a, b, p, 10000, 0, 100);
  EXPECT_LE(std::abs(e.value - 0.1264), 3 * e.std_err);
  EXPECT_LT(std::abs(e.value - 0.1264), 0.03);
  EXPECT_FALSE(e.assumption_violated);
}

TEST(Overlap, MaximallyMixedAndPureEachVariant) {
  const DensityMatrix mm = DensityMatrix::maximally_mixed({3, 2});
  const DensityMatrix phi = named_state({"max_entangled", {{"d", 3}}});
  auto combo = repeated(mm, mm, default_overlap_params(3, OverlapVariant::local_combo), 1, 5000, 101);
  // Every setting gives the same value here, so only round-off remains.
  EXPECT_LE(std::abs(combo.first - 1.0 / 9.0), 3 * combo.second + 1e-12);
  combo = repeated(phi, phi, default_overlap_params(3, OverlapVariant::local_combo), 1, 20000, 102);
  EXPECT_LE(std::abs(combo.first - 1.0), 3 * combo.second);
  const auto glob = repeated(phi, mm, default_overlap_params(9, OverlapVariant::global), 1, 20000, 103);
  EXPECT_LE(std::abs(glob.first - 1.0 / 9.0), 3 * glob.second);
  const DensityMatrix upb = named_state({"upb_tiles", {}});
  const auto pti = repeated(phi, upb, default_overlap_params(3, OverlapVariant::local_rrm_pti), 1, 20000, 104);
  EXPECT_LE(std::abs(pti.first - exact_overlap(phi, upb)), 3 * pti.second);
}

TEST(Overlap, UnbiasedOverRepetitions) {
  std::mt19937_64 eng(105);
  const DensityMatrix r1(oracle::ginibre_state(9, eng), {3, 2});
  const CMatrix sym = oracle::ginibre_state(9, eng).real().cast<cplx>();
  const DensityMatrix r2(sym / sym.trace(), {3, 2});
  const double want = exact_overlap(r1, r2);
  const auto combo = repeated(r1, r2, default_overlap_params(3, OverlapVariant::local_combo), 50, 1000, 106);
  EXPECT_LE(std::abs(combo.first - want), 3 * combo.second);
  const auto glob = repeated(r1, r2, default_overlap_params(9, OverlapVariant::global), 50, 1000, 107);
  EXPECT_LE(std::abs(glob.first - want), 3 * glob.second);
  const DensityMatrix cb = named_state({"chessboard", {}});
  const auto pti = repeated(r1, cb, default_overlap_params(3, OverlapVariant::local_rrm_pti), 50, 1000, 108);
  EXPECT_LE(std::abs(pti.first - exact_overlap(r1, cb)), 3 * pti.second);
}

TEST(Overlap, NegativeControls) {
  const DensityMatrix phi = named_state({"max_entangled", {{"d", 3}}});
  // β2 off by 10%: the single-swap terms no longer cancel.
  OverlapParams bad = default_overlap_params(3, OverlapVariant::local_combo);
  bad.beta2 *= 1.1;
  const auto e = repeated(phi, phi, bad, 1, 20000, 109);
  EXPECT_GT(std::abs(e.first - 1.0), 5 * e.second);

  // Real but not PTI second state.
  const DensityMatrix ghz = named_state({"ghz", {{"n", 3}}});
  const auto p = default_overlap_params(2, OverlapVariant::local_rrm_pti);
  const auto est = estimate_overlap(ghz, ghz, p, 20000, 0, 110);
  EXPECT_TRUE(est.assumption_violated);
  EXPECT_GT(std::abs(est.value - 1.0), 5 * est.std_err);
}

TEST(Overlap, Preconditions) {
  const DensityMatrix a = DensityMatrix::maximally_mixed({3, 2});
  const DensityMatrix b = DensityMatrix::maximally_mixed({2, 2});
  const auto p = default_overlap_params(3, OverlapVariant::local_combo);
  EXPECT_THROW(estimate_overlap(a, b, p, 100, 0, 1), ValidationError);
  EXPECT_THROW(estimate_overlap(a, a, default_overlap_params(4, OverlapVariant::local_combo), 100, 0, 1), ValidationError);
  EXPECT_THROW(estimate_overlap(a, a, default_overlap_params(3, OverlapVariant::global), 100, 0, 1), ValidationError);
  const DensityMatrix t1 = named_state({"table1", {{"k", 1}}});
  EXPECT_TRUE(estimate_overlap(a, t1, p, 100, 0, 1).assumption_violated);
}

TEST(Overlap, FiniteShotsAgree) {
  const DensityMatrix a = family(0.5), b = family(0.7);
  const auto p = default_overlap_params(5, OverlapVariant::local_combo);
  const auto e = estimate_overlap(a, b, p, 3000, 2000, 111);
  // Shot noise inflates the spread; allow the finite-shot product bias too.
  EXPECT_LT(std::abs(e.value - exact_overlap(a, b)), 5 * e.std_err + 0.02);
}

TEST(Fidelity, Examples) {
  const DensityMatrix phi = named_state({"max_entangled", {{"d", 3}}});
  const DensityMatrix mm = DensityMatrix::maximally_mixed({3, 2});
  const auto p = default_overlap_params(3, OverlapVariant::local_combo);
  auto f = cross_platform_fidelity(phi, phi, p, 20000, 120);
  EXPECT_LE(std::abs(f.value - 1.0), 3 * f.std_err);
  f = cross_platform_fidelity(phi, mm, p, 20000, 121);
  EXPECT_LE(std::abs(f.value - 1.0 / 9.0), 3 * f.std_err);

  const auto p5 = default_overlap_params(5, OverlapVariant::local_combo);
  const DensityMatrix a = family(0.1), b = family(0.9);
  auto purity = [](double q) { return q * q + (2 * q * (1 - q) + (1 - q) * (1 - q)) / 25.0; };
  EXPECT_NEAR((a.matrix() * a.matrix()).trace().real(), purity(0.1), 1e-12);
  const double want = 0.1264 / std::max(purity(0.1), purity(0.9));
  f = cross_platform_fidelity(a, b, p5, 10000, 122);
  EXPECT_LE(std::abs(f.value - want), 3 * f.std_err);
}
