#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rrm/rrm.hpp"

using namespace rrm;

namespace {

// Grid of 20 C2 values from 0 up to the smaller of the feasibility cap and the
// largest real-block purity (d²-1)/L² a state can reach.
std::vector<double> y_grid(int x, int d) {
  const double L = (d - 1) * (d + 2) / 2;
  const double top = std::min(f_min_cap(x, d), (d * d - 1.0) / (L * L));
  std::vector<double> ys;
  for (int i = 0; i < 20; ++i) ys.push_back(top * i / 19.0);
  return ys;
}

}  // namespace

TEST(FMin, Examples) {
  EXPECT_NEAR(*f_min(3, 0.2, 3), 875 * 3.0 / 1225.0 * 0.04, 1e-12);
  EXPECT_NEAR(*f_min(3, 0.2, 3), 0.085714, 1e-6);
  EXPECT_EQ(f_min_branch_index(1, 0.128, 3), 1);
  // Hand evaluation of the n_g = 1 branch: B = √2.4, c = 2.
  const double B = std::sqrt(2.4), W = 3.0 / 1225.0;
  const double f = std::pow(B - 2, 4) + std::pow(B + 2, 4);
  EXPECT_NEAR(*f_min(1, 0.128, 3), 2 * W * f / 16 + W * 625 * 0.128 * 0.128, 1e-12);
  EXPECT_NEAR(*f_min(1, 0.128, 3), 0.073674, 2e-5);
  for (int d : {2, 3, 4})
    for (int x = 1; x <= d; ++x) EXPECT_EQ(*f_min(x, 0.0, d), 0.0);
}

TEST(FMin, Domain) {
  EXPECT_FALSE(f_min(1, 4.0 / 25.0 + 1e-6, 3).has_value());
  EXPECT_TRUE(f_min(1, 4.0 / 25.0, 3).has_value());
  EXPECT_THROW(f_min(1, -0.1, 3), ValidationError);
  EXPECT_THROW(f_min(0, 0.1, 3), ValidationError);
  EXPECT_THROW(f_min(4, 0.1, 3), ValidationError);
}

TEST(FMinOracle, Examples) {
  EXPECT_NEAR(f_min_oracle(3, 0.2, 3), 0.0857142857, 1e-6);
  EXPECT_NEAR(f_min_oracle(1, 0.128, 3), *f_min(1, 0.128, 3), 1e-6);
  EXPECT_NEAR(f_min_oracle(1, 0.0, 3), 0.0, 1e-12);
  EXPECT_THROW(f_min_oracle(1, 0.5, 3), ValidationError);
}

TEST(FMinOracle, AgreesOnGrid) {
  for (int d : {3, 4})
    for (int x = 1; x <= d; ++x)
      for (double y : y_grid(x, d)) {
        const double a = *f_min(x, y, d);
        const double o = f_min_oracle(x, y, d);
        EXPECT_LT(std::abs(a - o), 1e-6) << "d=" << d << " x=" << x << " y=" << y;
        EXPECT_LE(o, a + 1e-6);
      }
}

TEST(FMin, NonIncreasingInX) {
  for (int d : {3, 4})
    for (int x = 1; x < d; ++x)
      for (double y : y_grid(x, d)) EXPECT_LE(*f_min(x + 1, y, d), *f_min(x, y, d) + 1e-15);
}

TEST(FMin, ContinuousAcrossBranches) {
  for (int d : {2, 3, 4, 5})
    for (int x = 1; x <= d; ++x) {
      const auto bs = f_min_boundaries(x, d);
      ASSERT_FALSE(bs.empty());
      for (const auto& b : bs) {
        const double lo = f_min_branch(x, b.y, d, b.lower_branch);
        const double hi = f_min_branch(x, b.y, d, b.upper_branch);
        EXPECT_LT(std::abs(lo - hi), 1e-9) << d << " " << x << " " << b.y;
        EXPECT_EQ(f_min_branch_index(x, b.y * (1 + 1e-9), d), b.upper_branch);
        EXPECT_EQ(f_min_branch_index(x, b.y * (1 - 1e-9), d), b.lower_branch);
      }
    }
}

TEST(SchmidtVerdict, Examples) {
  const double W = 3.0 / 1225.0;
  auto v = schmidt_verdict(0.2, 35 * W, 3);
  EXPECT_EQ(v.certified_sn_lower_bound, 2);
  EXPECT_EQ(v.fired_rule, SchmidtRule::second_moment_only);
  EXPECT_TRUE(v.boundary_flag);

  v = schmidt_verdict(0.128, 35 * W * std::pow(0.8, 4), 3);
  EXPECT_EQ(v.certified_sn_lower_bound, 2);
  EXPECT_EQ(v.fired_rule, SchmidtRule::fourth_moment);
  ASSERT_EQ(v.f_min_values.size(), 3u);
  EXPECT_NEAR(*v.f_min_values[0].second, 0.0736653, 1e-6);

  v = schmidt_verdict(0.0, 0.0, 3);
  EXPECT_EQ(v.certified_sn_lower_bound, 1);
  EXPECT_EQ(v.fired_rule, SchmidtRule::none);
}

TEST(TraceNormBound, Examples) {
  EXPECT_EQ(trace_norm_sn_bound(correlation_tensor(named_state({"isotropic", {{"d", 3}, {"p", 1.0}}}))), 2);
  EXPECT_EQ(trace_norm_sn_bound(correlation_tensor(DensityMatrix::maximally_mixed({3, 2}))), 0);
  EXPECT_GE(trace_norm_sn_bound(correlation_tensor(named_state({"upb_tiles", {}}))), 1);
}

TEST(Separability, Examples) {
  const auto ghz = named_state({"ghz", {{"n", 5}}});
  // Only X⊗5 survives in the all-real sector, so Q2 = 2^-5 sits exactly on the bound.
  const double q2 = exact_sector_moments(correlation_tensor(ghz)).Q2;
  EXPECT_NEAR(q2, 0.03125, 1e-12);
  const auto check = multipartite_separability_check(q2, 2, 5);
  EXPECT_NEAR(check.bound, 0.03125, 1e-15);
  EXPECT_FALSE(check.violated);
  EXPECT_FALSE(multipartite_separability_check(0.0, 3, 3).violated);
  EXPECT_THROW(multipartite_separability_check(0.1, 3, 1), ValidationError);

  Rng rng = make_rng({60, 0});
  for (int rep = 0; rep < 1000; ++rep) {
    const auto p = random_state(RandomStateKind::product, {3, 3}, rng);
    EXPECT_FALSE(multipartite_separability_check(exact_sector_moments(correlation_tensor(p)).Q2, 3, 3).violated);
  }
}

TEST(SchmidtVerdict, NeverExceedsSchmidtRankOfPureStates) {
  std::mt19937_64 eng(61);
  for (int rep = 0; rep < 200; ++rep) {
    const int rank = 1 + rep % 3;
    // Coefficient matrix of the requested rank.
    oracle::CMatrix c = oracle::CMatrix::Zero(3, 3);
    const oracle::CMatrix u = oracle::random_unitary(3, eng), v = oracle::random_unitary(3, eng);
    std::uniform_real_distribution<double> w(0.2, 1.0);
    for (int k = 0; k < rank; ++k) c += w(eng) * u.col(k) * v.col(k).transpose();
    CVector psi(9);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) psi(3 * a + b) = c(a, b);
    Eigen::JacobiSVD<oracle::CMatrix> svd(c);
    int true_rank = 0;
    for (int k = 0; k < 3; ++k) true_rank += svd.singularValues()(k) > 1e-9 * svd.singularValues()(0);
    ASSERT_EQ(true_rank, rank);
    const auto t = correlation_tensor(DensityMatrix::pure(psi, {3, 2}));
    const auto v2 = schmidt_verdict(exact_sector_moments(t).Q2, exact_fourth_moment(t), 3);
    EXPECT_LE(v2.certified_sn_lower_bound, true_rank);
    EXPECT_LE(trace_norm_sn_bound(t) + 1, true_rank);
  }
}

TEST(SchmidtVerdict, ProductStatesNeverFlagged) {
  Rng rng = make_rng({62, 0});
  for (int rep = 0; rep < 1000; ++rep) {
    const auto p = random_state(RandomStateKind::product, {3, 2}, rng);
    const auto t = correlation_tensor(p);
    const double c2 = exact_sector_moments(t).Q2, c4 = exact_fourth_moment(t);
    EXPECT_LE(c2, 4.0 / 25.0 + 1e-9);
    EXPECT_GE(c4, *f_min(1, c2, 3) - 1e-9);
    EXPECT_EQ(schmidt_verdict(c2, c4, 3).certified_sn_lower_bound, 1);
  }
}
