#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rrm/rrm.hpp"

using namespace rrm;

namespace {

DensityMatrix isotropic(int d, double p) { return named_state({"isotropic", {{"d", d}, {"p", p}}}); }

// Sector sums of T² from the brute-force tensor.
struct Sums {
  double rr = 0, ii = 0, all = 0;
};

Sums sector_sums(const oracle::RMatrix& t, int d) {
  const int L = (d - 1) * (d + 2) / 2;
  Sums s;
  for (int j = 1; j < d * d; ++j)
    for (int k = 1; k < d * d; ++k) {
      const double v = t(j, k) * t(j, k);
      s.all += v;
      if (j <= L && k <= L) s.rr += v;
      if (j > L && k > L) s.ii += v;
    }
  return s;
}

}  // namespace

TEST(MomentConstants, ClosedFormsAndGammaRatios) {
  EXPECT_NEAR(moment_constants(3).W, 3.0 / 1225.0, 1e-15);
  EXPECT_NEAR(moment_constants(3).W, 2.4490e-3, 1e-7);
  EXPECT_NEAR(moment_constants(3).V1, 0.04, 1e-15);
  EXPECT_NEAR(moment_constants(2).W, 0.046875, 1e-15);
  for (int d = 2; d <= 7; ++d) {
    const auto c = moment_constants(d);
    EXPECT_NEAR(c.W, oracle::W(d), 1e-12 * c.W);
    EXPECT_DOUBLE_EQ(c.V1, 1.0 / (c.L * c.L));
  }
  EXPECT_THROW(moment_constants(8), ValidationError);
  EXPECT_THROW(moment_constants(1), ValidationError);
}

TEST(Observables, TabulatedValuesAndInvariants) {
  const auto [re3, im3] = default_observables(3);
  EXPECT_NEAR(re3.matrix(0, 0).real(), 1.224745, 1e-6);
  EXPECT_NEAR(re3.matrix(1, 1).real(), 0.0, 1e-15);
  EXPECT_NEAR(re3.matrix(2, 2).real(), -1.224745, 1e-6);
  const auto [re4, im4] = default_observables(4);
  EXPECT_NEAR(re4.matrix(0, 0).real(), 1.357, 1e-2);
  EXPECT_NEAR(re4.matrix(1, 1).real(), 0.400, 1e-2);
  for (int d = 2; d <= 7; ++d) {
    const auto [re, im] = default_observables(d);
    for (const auto* o : {&re, &im}) {
      EXPECT_NEAR(std::abs(o->matrix.trace()), 0.0, 1e-10);
      EXPECT_NEAR((o->matrix * o->matrix).trace().real(), d, 1e-10);
      EXPECT_LT((o->matrix - o->matrix.adjoint()).norm(), 1e-15);
    }
    EXPECT_EQ(re.matrix.transpose(), re.matrix);
    EXPECT_EQ(im.matrix.transpose(), CMatrix(-im.matrix));
  }
  EXPECT_THROW(default_observables(8), ValidationError);
}

TEST(SectorMoments, Examples) {
  const auto phi = exact_sector_moments(correlation_tensor(isotropic(3, 1.0)));
  EXPECT_NEAR(phi.Q2, 0.2, 1e-12);
  EXPECT_NEAR(phi.Qhat2, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(phi.R2, 0.125, 1e-12);
  const auto mixed = exact_sector_moments(correlation_tensor(DensityMatrix::maximally_mixed({3, 2})));
  EXPECT_NEAR(mixed.Q2, 0.0, 1e-15);
  EXPECT_NEAR(mixed.Qhat2, 0.0, 1e-15);
  EXPECT_NEAR(mixed.R2, 0.0, 1e-15);
  const DensityMatrix s1 = named_state({"table1", {{"k", 1}}});
  EXPECT_NEAR(exact_sector_moments(correlation_tensor(partial_trace(s1, {0}))).Qhat2, 0.0, 1e-12);
  EXPECT_NEAR(exact_sector_moments(correlation_tensor(partial_trace(s1, {1}))).Qhat2, 0.0, 1e-12);
}

TEST(SectorMoments, AgainstBruteForceTensor) {
  std::mt19937_64 eng(21);
  for (int d : {2, 3, 4}) {
    const int L = (d - 1) * (d + 2) / 2, Lh = d * (d - 1) / 2;
    const CMatrix r = oracle::ginibre_state(d * d, eng);
    const Sums s = sector_sums(oracle::correlation(r, d), d);
    const auto m = exact_sector_moments(correlation_tensor(DensityMatrix(r, {d, 2})));
    EXPECT_NEAR(m.Q2, s.rr / (L * L), 1e-12);
    EXPECT_NEAR(m.Qhat2, s.ii / (Lh * Lh), 1e-12);
    EXPECT_NEAR(m.R2, s.all / std::pow(d * d - 1.0, 2), 1e-12);
    EXPECT_GE(m.R2 * std::pow(d * d - 1.0, 2) + 1e-12, m.Q2 * L * L + m.Qhat2 * Lh * Lh);
  }
}

TEST(FourthMoment, Examples) {
  const double W = 3.0 / 1225.0;
  EXPECT_NEAR(exact_fourth_moment(correlation_tensor(isotropic(3, 1.0))), 35 * W, 1e-12);
  EXPECT_NEAR(exact_fourth_moment(correlation_tensor(isotropic(3, 1.0))), 0.085714, 1e-6);
  EXPECT_NEAR(exact_fourth_moment(correlation_tensor(DensityMatrix::maximally_mixed({3, 2}))), 0.0, 1e-15);
  EXPECT_NEAR(exact_fourth_moment(correlation_tensor(isotropic(3, 0.8))), 35 * W * 0.4096, 1e-12);
  EXPECT_NEAR(exact_fourth_moment(correlation_tensor(isotropic(3, 0.8))), 0.035109, 1e-6);
  EXPECT_THROW(exact_fourth_moment(correlation_tensor(DensityMatrix::maximally_mixed({2, 3}))), ValidationError);
}

TEST(SphereMoment, EqualsSectorFormsIdentically) {
  const auto t = correlation_tensor(isotropic(3, 1.0));
  EXPECT_NEAR(sphere_moment(t, 2), 0.2, 1e-12);
  EXPECT_NEAR(sphere_moment(t, 4), 0.085714, 1e-6);
  const auto z = correlation_tensor(DensityMatrix::maximally_mixed({3, 2}));
  EXPECT_NEAR(sphere_moment(z, 2), 0.0, 1e-15);
  EXPECT_NEAR(sphere_moment(z, 4), 0.0, 1e-15);
  EXPECT_THROW(sphere_moment(t, 3), ValidationError);
  std::mt19937_64 eng(22);
  for (int d : {3, 4, 5}) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto tr = correlation_tensor(DensityMatrix(oracle::ginibre_state(d * d, eng), {d, 2}));
      EXPECT_NEAR(sphere_moment(tr, 2), exact_sector_moments(tr).Q2, 1e-12);
      EXPECT_NEAR(sphere_moment(tr, 4), exact_fourth_moment(tr), 1e-12);
    }
  }
}

TEST(ExactMoment, IsotropicClosedForms) {
  const double W = moment_constants(3).W;
  for (double p : {0.6, 0.7, 0.8, 0.9, 1.0}) {
    EXPECT_NEAR(exact_moment(isotropic(3, p), Protocol::RRM, 2), p * p / 5.0, 1e-10);
    EXPECT_NEAR(exact_moment(isotropic(3, p), Protocol::RRM, 4), 35 * W * std::pow(p, 4), 1e-10);
  }
  EXPECT_EQ(exact_moment(isotropic(3, 0.5), Protocol::RRM, 1), 0.0);
  EXPECT_THROW(exact_moment(isotropic(3, 0.5), Protocol::RM, 4), ValidationError);
}

TEST(ExpectationValue, Examples) {
  Rng rng = make_rng({1, 0});
  const auto [re, im] = default_observables(3);
  const std::vector<CMatrix> ident(2, CMatrix::Identity(3, 3));
  const std::vector<CMatrix> mm(2, re.matrix);
  const std::vector<CMatrix> rand = {sample_orthogonal(3, {2, 0}).matrix, sample_unitary(3, {2, 1}).matrix};
  EXPECT_NEAR(expectation_value(DensityMatrix::maximally_mixed({3, 2}), rand, mm, 0, rng), 0.0, 1e-15);
  EXPECT_NEAR(expectation_value(isotropic(3, 1.0), ident, mm, 0, rng), 1.0, 1e-12);

  const DensityMatrix rho = named_state({"upb_tiles", {}});
  const double exact = expectation_value(rho, rand, mm, 0, rng);
  const long shots = 1000000;
  const double est = expectation_value(rho, rand, mm, shots, rng);
  // Variance of the eigenvalue product under the Born distribution.
  std::vector<CMatrix> sq = {rand[0] * re.matrix * re.matrix * rand[0].adjoint(),
                             rand[1] * re.matrix * re.matrix * rand[1].adjoint()};
  const double second = product_expectation(rho.matrix(), sq).real();
  const double se = std::sqrt((second - exact * exact) / shots);
  EXPECT_LE(std::abs(est - exact), 4 * se);

  const std::vector<CMatrix> bad = {CMatrix::Identity(3, 3) * 2.0, CMatrix::Identity(3, 3)};
  EXPECT_THROW(expectation_value(rho, bad, mm, 0, rng), ValidationError);
}

TEST(MonteCarlo, ChessboardSecondMoment) {
  const DensityMatrix cb = named_state({"chessboard", {}});
  const double exact = exact_sector_moments(correlation_tensor(cb)).Q2;
  const auto est = estimate_moment_mc(cb, Protocol::RRM, 2, 10000, 0, 31);
  EXPECT_LE(std::abs(est.value - exact), 3 * est.std_err);
  EXPECT_GT(est.std_err, 0.0);
}

TEST(MonteCarlo, MaximallyEntangledFourthMoment) {
  const auto est = estimate_moment_mc(isotropic(3, 1.0), Protocol::RRM, 4, 10000, 0, 32);
  EXPECT_LE(std::abs(est.value - 0.0857142857), 3 * est.std_err);
}

TEST(MonteCarlo, MaximallyMixedIsZero) {
  for (Protocol k : {Protocol::RM, Protocol::RRM, Protocol::PRRM})
    for (int t : {2, 4}) {
      const auto est = estimate_moment_mc(DensityMatrix::maximally_mixed({3, 2}), k, t, 200, 0, 33);
      EXPECT_LE(std::abs(est.value), 3 * est.std_err + 1e-15);
    }
  EXPECT_THROW(estimate_moment_mc(DensityMatrix::maximally_mixed({3, 2}), Protocol::RRM, 2, 1, 0, 1), ValidationError);
}

TEST(MonteCarlo, ZooStatesMatchClosedForms) {
  const std::vector<StateSpec> specs = {{"upb_tiles", {}},
                                        {"chessboard", {}},
                                        {"table1", {{"k", 2}}},
                                        {"bell", {{"k", 1}}},
                                        {"isotropic", {{"d", 4}, {"p", 0.8}}}};
  std::uint64_t seed = 40;
  for (const auto& s : specs) {
    const DensityMatrix rho = named_state(s);
    for (Protocol k : {Protocol::RM, Protocol::RRM, Protocol::PRRM}) {
      const auto est = estimate_moment_mc(rho, k, 2, 10000, 0, ++seed);
      // Real states give PRRM values at round-off level; the floor covers that.
      EXPECT_LE(std::abs(est.value - exact_moment(rho, k, 2)), 3 * est.std_err + 1e-12) << s.name << " " << to_string(k);
    }
    const auto est4 = estimate_moment_mc(rho, Protocol::RRM, 4, 10000, 0, ++seed);
    EXPECT_LE(std::abs(est4.value - exact_moment(rho, Protocol::RRM, 4)), 3 * est4.std_err) << s.name;
  }
}

TEST(MonteCarlo, DeterministicAcrossThreads) {
  const DensityMatrix rho = isotropic(3, 0.7);
  const auto a = estimate_moment_mc(rho, Protocol::RRM, 2, 500, 0, 5, 1);
  const auto b = estimate_moment_mc(rho, Protocol::RRM, 2, 500, 0, 5, 4);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_err, b.std_err);
}

TEST(Invariance, LocalOrthogonalAndUnitary) {
  std::mt19937_64 eng(50);
  for (int rep = 0; rep < 100; ++rep) {
    const CMatrix r = oracle::ginibre_state(9, eng);
    const auto t0 = correlation_tensor(DensityMatrix(r, {3, 2}));
    const auto m0 = exact_sector_moments(t0);
    const CMatrix o = oracle::kron(oracle::random_orthogonal(3, eng).cast<cplx>(),
                                   oracle::random_orthogonal(3, eng).cast<cplx>());
    const auto t1 = correlation_tensor(DensityMatrix(o * r * o.adjoint(), {3, 2}));
    const auto m1 = exact_sector_moments(t1);
    EXPECT_NEAR(m0.Q2, m1.Q2, 1e-10);
    EXPECT_NEAR(m0.Qhat2, m1.Qhat2, 1e-10);
    EXPECT_NEAR(exact_fourth_moment(t0), exact_fourth_moment(t1), 1e-10);
    const CMatrix u = oracle::kron(oracle::random_unitary(3, eng), oracle::random_unitary(3, eng));
    const auto m2 = exact_sector_moments(correlation_tensor(DensityMatrix(u * r * u.adjoint(), {3, 2})));
    EXPECT_NEAR(m0.R2, m2.R2, 1e-10);
  }
}

TEST(SectorInequality, HoldsAndSaturatesOnRealStates) {
  std::mt19937_64 eng(51);
  for (int rep = 0; rep < 1000; ++rep) {
    const CMatrix r = oracle::ginibre_state(9, eng);
    const Sums s = sector_sums(oracle::correlation(r, 3), 3);
    EXPECT_LE(s.rr + s.ii, s.all + 1e-12);
    const CMatrix sym = 0.5 * (r + r.transpose());
    const Sums e = sector_sums(oracle::correlation(sym, 3), 3);
    EXPECT_NEAR(e.rr + e.ii, e.all, 1e-10);
  }
}
