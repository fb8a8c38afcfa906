#include "rrm/haar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>

#include "rrm/linalg.hpp"

namespace rrm {

double RandomMatrixSample::residual() const { return unitarity_residual(matrix); }

RMatrix haar_orthogonal(int d, Rng& rng) {
  if (d < 1) throw ValidationError("haar_orthogonal: d must be positive");
  std::normal_distribution<double> g(0.0, 1.0);
  RMatrix z(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) z(r, c) = g(rng);
  Eigen::HouseholderQR<RMatrix> qr(z);
  RMatrix q = qr.householderQ();
  const RMatrix& packed = qr.matrixQR();
  for (int j = 0; j < d; ++j)
    if (packed(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

CMatrix haar_unitary(int d, Rng& rng) {
  if (d < 1) throw ValidationError("haar_unitary: d must be positive");
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix z(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) {
      const double re = g(rng);
      const double im = g(rng);
      z(r, c) = cplx(re, im);
    }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix& packed = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const double a = std::abs(packed(j, j));
    if (a > 0.0) q.col(j) *= packed(j, j) / a;
  }
  return q;
}

RandomMatrixSample sample_orthogonal(int d, const SeedPath& path) {
  if (d < 2) throw ValidationError("sample_orthogonal: d must be >= 2");
  Rng rng = make_rng(path);
  RandomMatrixSample s;
  s.kind = MatrixKind::orthogonal;
  s.d = d;
  s.matrix = haar_orthogonal(d, rng).cast<cplx>();
  s.seed_path = path;
  return s;
}

RandomMatrixSample sample_unitary(int d, const SeedPath& path) {
  if (d < 2) throw ValidationError("sample_unitary: d must be >= 2");
  Rng rng = make_rng(path);
  RandomMatrixSample s;
  s.kind = MatrixKind::unitary;
  s.d = d;
  s.matrix = haar_unitary(d, rng);
  s.seed_path = path;
  return s;
}

CMatrix swap_operator(int d) {
  CMatrix s = CMatrix::Zero(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) s(j * d + k, k * d + j) = 1.0;
  return s;
}

CMatrix pi_operator(int d) {
  CMatrix p = CMatrix::Zero(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) p(j * d + j, k * d + k) = 1.0;
  return p;
}

namespace {

int square_root_dim(Eigen::Index size) {
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(size))));
  if (static_cast<Eigen::Index>(d) * d != size) throw ValidationError("operator size is not a square d²");
  return d;
}

}  // namespace

SecondMomentCoeffs orthogonal_second_moment_coeffs(const CMatrix& a2) {
  if (a2.rows() != a2.cols()) throw ValidationError("second moment: operator is not square");
  const int d = square_root_dim(a2.rows());
  if (d < 2) throw ValidationError("second moment: d must be >= 2");
  const CMatrix s = swap_operator(d);
  const CMatrix p = pi_operator(d);
  const double ta = a2.trace().real();
  const double tsa = (s * a2).trace().real();
  const double tpa = (p * a2).trace().real();
  const double den = d * (d - 1.0) * (d + 2.0);
  SecondMomentCoeffs c;
  c.gamma1 = ((d + 1.0) * ta - tsa - tpa) / den;
  c.gamma2 = (-ta + (d + 1.0) * tsa - tpa) / den;
  c.gamma3 = (-ta - tsa + (d + 1.0) * tpa) / den;
  return c;
}

CMatrix orthogonal_first_moment(const CMatrix& a) {
  if (a.rows() != a.cols()) throw ValidationError("first moment: operator is not square");
  const double d = static_cast<double>(a.rows());
  return a.trace() / d * CMatrix::Identity(a.rows(), a.cols());
}

CMatrix orthogonal_second_moment(const CMatrix& a2) {
  const int d = square_root_dim(a2.rows());
  // The coefficients are real for Hermitian input; use the complex traces in
  // general so the prediction stays linear in A.
  const CMatrix s = swap_operator(d);
  const CMatrix p = pi_operator(d);
  const cplx ta = a2.trace();
  const cplx tsa = (s * a2).trace();
  const cplx tpa = (p * a2).trace();
  const double den = d * (d - 1.0) * (d + 2.0);
  const cplx g1 = ((d + 1.0) * ta - tsa - tpa) / den;
  const cplx g2 = (-ta + (d + 1.0) * tsa - tpa) / den;
  const cplx g3 = (-ta - tsa + (d + 1.0) * tpa) / den;
  return g1 * CMatrix::Identity(d * d, d * d) + g2 * s + g3 * p;
}

bool HaarValidationReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

namespace {

struct BatteryItem {
  std::string id;
  int order;
  CMatrix op;
};

std::vector<BatteryItem> battery(int d) {
  std::vector<BatteryItem> items;
  CMatrix p0 = CMatrix::Zero(d, d);
  p0(0, 0) = 1.0;
  items.push_back({"proj0", 1, p0});
  CMatrix diag = CMatrix::Zero(d, d);
  diag(0, 0) = 1.0;
  diag(d - 1, d - 1) = -1.0;
  items.push_back({"diag_plus_minus", 1, diag});
  CMatrix e01 = CMatrix::Zero(d, d);
  e01(0, 1) = 1.0;
  items.push_back({"e01", 1, e01});
  CMatrix fixed(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) fixed(j, k) = cplx(std::cos(1.0 + j + 2.0 * k), std::sin(0.5 * j - k));
  items.push_back({"fixed_complex", 1, fixed});

  const int D = d * d;
  CMatrix p00 = CMatrix::Zero(D, D);
  p00(0, 0) = 1.0;
  items.push_back({"proj00", 2, p00});
  items.push_back({"diag_x_diag", 2, kron(diag, diag)});
  CMatrix e0110 = CMatrix::Zero(D, D);
  e0110(1, d) = 1.0;
  items.push_back({"e01_e10", 2, e0110});
  items.push_back({"swap", 2, swap_operator(d)});
  CMatrix fixed2(D, D);
  for (int j = 0; j < D; ++j)
    for (int k = 0; k < D; ++k) fixed2(j, k) = cplx(std::cos(0.3 * j * k + k), std::sin(1.0 + j - 0.7 * k));
  items.push_back({"fixed_complex", 2, fixed2});
  return items;
}

}  // namespace

HaarValidationReport verify_haar_sampler(int d, long n_samples, std::uint64_t seed, int threads) {
  if (d < 2) throw ValidationError("verify_haar_sampler: d must be >= 2");
  if (n_samples < 1000) throw ValidationError("verify_haar_sampler: n_samples must be >= 1000");
  const auto items = battery(d);
  const std::size_t m = items.size();

  // Fixed-size chunks accumulate in index order; chunks are then summed in
  // order, so the result does not depend on the worker count.
  struct Acc {
    std::vector<CMatrix> sum;
    std::vector<RMatrix> sq_re, sq_im;
  };
  constexpr long kChunk = 256;
  const long n_chunks = (n_samples + kChunk - 1) / kChunk;
  std::vector<Acc> chunks(static_cast<std::size_t>(n_chunks));
  parallel_for(static_cast<std::size_t>(n_chunks), threads, [&](std::size_t ci) {
    Acc acc;
    for (const auto& it : items) {
      acc.sum.push_back(CMatrix::Zero(it.op.rows(), it.op.cols()));
      acc.sq_re.push_back(RMatrix::Zero(it.op.rows(), it.op.cols()));
      acc.sq_im.push_back(RMatrix::Zero(it.op.rows(), it.op.cols()));
    }
    const long begin = static_cast<long>(ci) * kChunk;
    const long end = std::min(n_samples, begin + kChunk);
    for (long i = begin; i < end; ++i) {
      Rng rng = make_rng({seed, static_cast<std::uint64_t>(i)});
      const CMatrix oc = haar_orthogonal(d, rng).cast<cplx>();
      const CMatrix o2 = kron(oc, oc);
      for (std::size_t k = 0; k < m; ++k) {
        const CMatrix& u = items[k].order == 1 ? oc : o2;
        const CMatrix x = u * items[k].op * u.transpose();
        acc.sum[k] += x;
        acc.sq_re[k] += x.real().cwiseAbs2();
        acc.sq_im[k] += x.imag().cwiseAbs2();
      }
    }
    chunks[ci] = std::move(acc);
  });

  HaarValidationReport report;
  report.d = d;
  report.n_samples = n_samples;
  report.seed = seed;
  const double n = static_cast<double>(n_samples);
  for (std::size_t k = 0; k < m; ++k) {
    const Eigen::Index rows = items[k].op.rows();
    CMatrix sum = CMatrix::Zero(rows, rows);
    RMatrix sq_re = RMatrix::Zero(rows, rows);
    RMatrix sq_im = RMatrix::Zero(rows, rows);
    for (const Acc& acc : chunks) {
      sum += acc.sum[k];
      sq_re += acc.sq_re[k];
      sq_im += acc.sq_im[k];
    }
    const CMatrix mean = sum / n;
    const CMatrix expected = items[k].order == 1 ? orthogonal_first_moment(items[k].op)
                                                 : orthogonal_second_moment(items[k].op);
    HaarCheck check;
    check.operator_id = items[k].id;
    check.order = items[k].order;
    check.pass = true;
    double worst_z = -1.0;
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < rows; ++c) {
        const double parts_mean[2] = {mean(r, c).real(), mean(r, c).imag()};
        const double parts_exp[2] = {expected(r, c).real(), expected(r, c).imag()};
        const double parts_sq[2] = {sq_re(r, c), sq_im(r, c)};
        for (int p = 0; p < 2; ++p) {
          const double var = std::max(0.0, (parts_sq[p] / n - parts_mean[p] * parts_mean[p]) * n / (n - 1.0));
          const double se = std::sqrt(var / n);
          const double dev = std::abs(parts_mean[p] - parts_exp[p]);
          // Entries that are constant over the group have zero spread; only
          // round-off separates them from the prediction.
          const bool ok = dev <= 3.0 * se + 1e-12;
          const double z = se > 0.0 ? dev / se : (dev > 1e-12 ? INFINITY : 0.0);
          check.max_abs_dev = std::max(check.max_abs_dev, dev);
          if (z > worst_z) {
            worst_z = z;
            check.std_err = se;
          }
          if (!ok) check.pass = false;
        }
      }
    check.max_z = worst_z;
    report.checks.push_back(check);
  }
  return report;
}

}  // namespace rrm
