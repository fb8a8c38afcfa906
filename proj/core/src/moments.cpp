#include "rrm/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "rrm/haar.hpp"
#include "rrm/linalg.hpp"

namespace rrm {

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::RM: return "RM";
    case Protocol::RRM: return "RRM";
    case Protocol::PRRM: return "PRRM";
  }
  return "?";
}

Protocol protocol_from_string(const std::string& s) {
  if (s == "RM" || s == "rm") return Protocol::RM;
  if (s == "RRM" || s == "rrm") return Protocol::RRM;
  if (s == "PRRM" || s == "prrm") return Protocol::PRRM;
  throw ValidationError("unknown protocol '" + s + "' (expected RM, RRM or PRRM)");
}

MomentConstants moment_constants(int d) {
  if (d < 2 || d > 7) throw ValidationError("moment_constants: d must be in [2, 7], got " + std::to_string(d));
  MomentConstants c;
  c.d = d;
  c.L = (d - 1) * (d + 2) / 2;
  c.Lhat = d * (d - 1) / 2;
  const double L = c.L;
  c.V1 = 1.0 / (L * L);
  c.W = 3.0 / (L * L * (L + 2.0) * (L + 2.0));

  const double v1_gamma = std::pow(std::tgamma(L / 2.0) / std::tgamma((L + 2.0) / 2.0), 2) / 4.0;
  const double w_gamma = 3.0 * std::pow(std::tgamma(L / 2.0) / std::tgamma((L + 4.0) / 2.0), 2) / 16.0;
  if (std::abs(v1_gamma - c.V1) > 1e-12 * c.V1 || std::abs(w_gamma - c.W) > 1e-12 * c.W)
    throw std::logic_error("moment_constants: closed forms disagree with the Gamma-function ratios");
  return c;
}

std::pair<Observable, Observable> default_observables(int d) {
  std::vector<double> diag;
  switch (d) {
    case 2: diag = {1.0, -1.0}; break;
    case 3: diag = {std::sqrt(1.5), 0.0, -std::sqrt(1.5)}; break;
    case 4: diag = {1.357, 0.400, -0.400, -1.357}; break;
    case 5: diag = {1.444, 0.644, 0.0, -0.644, -1.444}; break;
    case 6: diag = {1.4966, 0.8719, -1.4966, -0.8719, 0.0, 0.0}; break;
    case 7: diag = {1.5041, 1.1125, -1.5041, -1.1125, 0.0, 0.0, 0.0}; break;
    default: throw ValidationError("default_observables: d must be in [2, 7], got " + std::to_string(d));
  }
  double sq = 0.0;
  for (double k : diag) sq += k * k;
  Observable re;
  re.d = d;
  re.kind = ObservableKind::real;
  re.scale = std::sqrt(d / sq);
  re.matrix = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) re.matrix(j, j) = diag[j] * re.scale;

  Observable im;
  im.d = d;
  im.kind = ObservableKind::imaginary;
  im.matrix = CMatrix::Zero(d, d);
  const double s = std::sqrt(d / 2.0);
  im.matrix(0, d - 1) = cplx(0.0, -s);
  im.matrix(d - 1, 0) = cplx(0.0, s);
  return {re, im};
}

SectorMoments exact_sector_moments(const CorrelationTensor& t) {
  const int d = t.dims().d;
  const int n = t.dims().n;
  const int L = (d - 1) * (d + 2) / 2;
  const int Lhat = d * (d - 1) / 2;
  const int base = t.base();
  double all = 0.0, real = 0.0, imag = 0.0;
  for (long i = 0; i < t.size(); ++i) {
    long rest = i;
    bool all_nonzero = true, all_real = true, all_imag = true;
    for (int p = 0; p < n; ++p) {
      const int j = static_cast<int>(rest % base);
      rest /= base;
      if (j == 0) {
        all_nonzero = all_real = all_imag = false;
        break;
      }
      if (j <= L) all_imag = false;
      else all_real = false;
    }
    if (!all_nonzero) continue;
    const double v2 = t.flat(i) * t.flat(i);
    all += v2;
    if (all_real) real += v2;
    if (all_imag) imag += v2;
  }
  SectorMoments m;
  m.d = d;
  m.n_parties = n;
  m.R2 = all / std::pow(d * d - 1.0, n);
  m.Q2 = real / std::pow(static_cast<double>(L), n);
  m.Qhat2 = imag / std::pow(static_cast<double>(Lhat), n);
  return m;
}

namespace {

RMatrix real_block(const CorrelationTensor& t) {
  if (t.dims().n != 2) throw ValidationError("fourth moment needs a bipartite tensor");
  const int d = t.dims().d;
  const int L = (d - 1) * (d + 2) / 2;
  return t.block(1, L, 1, L);
}

}  // namespace

double exact_fourth_moment(const CorrelationTensor& t) {
  const RMatrix tr = real_block(t);
  const MomentConstants c = moment_constants(t.dims().d);
  const RVector tau = singular_values(tr);
  const double s2 = tau.squaredNorm();
  const double s4 = tau.array().pow(4).sum();
  return c.W * (2.0 * s4 + s2 * s2);
}

double sphere_moment(const CorrelationTensor& t, int order) {
  if (order != 2 && order != 4) throw ValidationError("sphere_moment: order must be 2 or 4");
  const RMatrix m = real_block(t);
  const MomentConstants c = moment_constants(t.dims().d);
  const int L = c.L;
  if (order == 2) return c.V1 * m.squaredNorm();

  // Expansion of W·E[(Σ_jk T_jk u_j v_k)^4] over pairs of unit vectors, term
  // by term: equal entries, shared row, shared column, disjoint squares and
  // the 2×2 minors.
  double same = 0.0, row = 0.0, col = 0.0, disjoint = 0.0, cross = 0.0;
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b) {
      const double x = m(a, b);
      same += x * x * x * x;
      for (int b2 = 0; b2 < L; ++b2)
        if (b2 != b) row += x * x * m(a, b2) * m(a, b2);
      for (int a2 = 0; a2 < L; ++a2) {
        if (a2 == a) continue;
        col += x * x * m(a2, b) * m(a2, b);
        for (int b2 = 0; b2 < L; ++b2) {
          if (b2 == b) continue;
          disjoint += x * x * m(a2, b2) * m(a2, b2);
          cross += x * m(a, b2) * m(a2, b) * m(a2, b2);
        }
      }
    }
  return c.W * (3.0 * same + 3.0 * row + 3.0 * col + disjoint + 2.0 * cross);
}

double exact_moment(const DensityMatrix& rho, Protocol kind, int t) {
  if (t == 1) return 0.0;
  const CorrelationTensor tensor = correlation_tensor(rho);
  if (t == 2) {
    const SectorMoments s = exact_sector_moments(tensor);
    switch (kind) {
      case Protocol::RM: return s.R2;
      case Protocol::RRM: return s.Q2;
      case Protocol::PRRM: return s.Qhat2;
    }
  }
  if (t == 4 && kind == Protocol::RRM && rho.n() == 2) return exact_fourth_moment(tensor);
  throw ValidationError("no closed form for " + to_string(kind) + " moment of order " + std::to_string(t) +
                        " on " + std::to_string(rho.n()) + " parties");
}

namespace {

// Counts of a multinomial draw via successive binomials.
std::vector<long> multinomial(long shots, const std::vector<double>& probs, Rng& rng) {
  std::vector<long> counts(probs.size(), 0);
  double remaining_p = 1.0;
  long remaining = shots;
  for (std::size_t k = 0; k + 1 < probs.size() && remaining > 0; ++k) {
    const double q = remaining_p > 0.0 ? std::clamp(probs[k] / remaining_p, 0.0, 1.0) : 0.0;
    std::binomial_distribution<long> b(remaining, q);
    counts[k] = b(rng);
    remaining -= counts[k];
    remaining_p -= probs[k];
  }
  if (!probs.empty()) counts.back() += remaining;
  return counts;
}

}  // namespace

double expectation_value(const DensityMatrix& rho, const std::vector<CMatrix>& settings,
                         const std::vector<CMatrix>& observables, long n_shots, Rng& rng) {
  const int n = rho.n();
  const int d = rho.d();
  if (static_cast<int>(settings.size()) != n || static_cast<int>(observables.size()) != n)
    throw ValidationError("expectation_value: need one setting and one observable per party");
  for (int j = 0; j < n; ++j) {
    if (settings[j].rows() != d || settings[j].cols() != d || observables[j].rows() != d ||
        observables[j].cols() != d)
      throw ValidationError("expectation_value: local dimension mismatch");
    if (unitarity_residual(settings[j]) > 1e-10)
      throw ValidationError("expectation_value: setting matrix is not orthogonal/unitary");
    if (hermitian_residual(observables[j]) > tol::herm)
      throw ValidationError("expectation_value: observable is not Hermitian");
  }
  if (n_shots < 0) throw ValidationError("expectation_value: n_shots must be >= 0");

  if (n_shots == 0) {
    std::vector<CMatrix> ops(n);
    for (int j = 0; j < n; ++j) ops[j] = settings[j] * observables[j] * settings[j].adjoint();
    return product_expectation(rho.matrix(), ops).real();
  }

  // Rotate ρ into the eigenbasis of each rotated observable and sample.
  CMatrix r = rho.matrix();
  std::vector<RVector> eig(n);
  for (int j = 0; j < n; ++j) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(observables[j]);
    eig[j] = es.eigenvalues();
    const CMatrix basis = settings[j] * es.eigenvectors();
    r = apply_local(r, rho.dims(), j, basis.adjoint());
  }
  const long D = rho.dim();
  std::vector<double> probs(D);
  double total = 0.0;
  for (long b = 0; b < D; ++b) {
    probs[b] = std::max(0.0, r(b, b).real());
    total += probs[b];
  }
  for (double& p : probs) p /= total;
  const std::vector<long> counts = multinomial(n_shots, probs, rng);
  double acc = 0.0;
  for (long b = 0; b < D; ++b) {
    if (counts[b] == 0) continue;
    const auto dg = digits(b, d, n);
    double v = 1.0;
    for (int j = 0; j < n; ++j) v *= eig[j](dg[j]);
    acc += v * static_cast<double>(counts[b]);
  }
  return acc / static_cast<double>(n_shots);
}

MomentEstimate estimate_moment_mc(const DensityMatrix& rho, Protocol kind, int t, long n_settings,
                                  long n_shots, std::uint64_t seed, int threads) {
  if (t < 1) throw ValidationError("estimate_moment_mc: t must be >= 1");
  if (n_settings < 2) throw ValidationError("estimate_moment_mc: n_settings must be >= 2");
  const int d = rho.d();
  const int n = rho.n();
  const auto [re, im] = default_observables(d);
  const CMatrix& m = kind == Protocol::PRRM ? im.matrix : re.matrix;
  const std::vector<CMatrix> obs(n, m);

  std::vector<double> values(static_cast<std::size_t>(n_settings));
  parallel_for(values.size(), threads, [&](std::size_t i) {
    Rng rng = make_rng({seed, i});
    std::vector<CMatrix> settings(n);
    for (int j = 0; j < n; ++j)
      settings[j] = kind == Protocol::RM ? haar_unitary(d, rng) : CMatrix(haar_orthogonal(d, rng).cast<cplx>());
    const double e = expectation_value(rho, settings, obs, n_shots, rng);
    values[i] = std::pow(e, t);
  });

  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n_settings);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  MomentEstimate est;
  est.value = mean;
  est.std_err = std::sqrt(ss / (n_settings - 1.0) / static_cast<double>(n_settings));
  est.t = t;
  est.n_settings = n_settings;
  est.n_shots = n_shots;
  est.kind = kind;
  est.seed = seed;
  return est;
}

}  // namespace rrm
