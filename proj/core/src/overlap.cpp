#include "rrm/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rrm/diagnostics.hpp"
#include "rrm/haar.hpp"
#include "rrm/linalg.hpp"
#include "rrm/moments.hpp"
#include "rrm/random.hpp"

namespace rrm {

std::string to_string(OverlapVariant v) {
  switch (v) {
    case OverlapVariant::local_combo: return "local_combo";
    case OverlapVariant::global: return "global";
    case OverlapVariant::local_rrm_pti: return "local_rrm_pti";
  }
  return "?";
}

OverlapVariant overlap_variant_from_string(const std::string& s) {
  for (auto v : {OverlapVariant::local_combo, OverlapVariant::global, OverlapVariant::local_rrm_pti})
    if (to_string(v) == s) return v;
  throw ValidationError("unknown overlap variant '" + s + "'");
}

OverlapParams validate_overlap_params(double alpha1, double alpha2, double beta1, double beta2, int d,
                                      OverlapVariant variant) {
  if (d < 2) throw ValidationError("overlap: dimension must be >= 2");
  const double sa = alpha1 + alpha2, sb = beta1 + beta2, dot = alpha1 * beta1 + alpha2 * beta2;
  const double dd = static_cast<double>(d);
  const double lhs = (dd + 1.0) * sa * sb, rhs = 2.0 * dot;
  if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::max(std::abs(lhs), std::abs(rhs))))
    throw ValidationError("overlap: parameters violate (d+1)(α1+α2)(β1+β2) = 2(α1β1+α2β2)");
  const double num = -sa * sb + dd * dot;
  if (std::abs(num) <= 1e-12) throw ValidationError("overlap: degenerate parameters (γ = 0)");
  OverlapParams p{alpha1, alpha2, beta1, beta2, d, 0.0, 0.0, variant};
  p.gamma = num / (dd * (dd - 1.0) * (dd + 2.0));
  p.eta = 2.0 / (dd * (dd - 1.0));
  return p;
}

OverlapParams default_overlap_params(int d, OverlapVariant variant) {
  if (d < 2) throw ValidationError("overlap: dimension must be >= 2");
  const double dd = static_cast<double>(d);
  return validate_overlap_params(0.0, 1.0, 1.0, -(dd + 1.0) / (dd - 1.0), d, variant);
}

namespace {

CMatrix diag_obs(int d, double a0, double a1) {
  CMatrix m = CMatrix::Zero(d, d);
  m(0, 0) += a0;
  m(d - 1, d - 1) += a1;
  return m;
}

CMatrix imag_obs(int d) {
  CMatrix m = CMatrix::Zero(d, d);
  m(0, d - 1) = cplx(0.0, -1.0);
  m(d - 1, 0) = cplx(0.0, 1.0);
  return m;
}

// tr(X A) for the full operator A.
double trace_product(const CMatrix& x, const CMatrix& a) { return x.cwiseProduct(a.transpose()).sum().real(); }

// Expectation of a diagonal observable under a global rotation, exact or from shots.
double global_expectation(const CMatrix& rho, const RMatrix& o, const RVector& mdiag, long n_shots, Rng& rng) {
  const long D = rho.rows();
  const CMatrix r = o.cast<cplx>() * rho * o.transpose().cast<cplx>();
  std::vector<double> w(D);
  for (long b = 0; b < D; ++b) w[b] = std::max(0.0, r(b, b).real());
  if (n_shots == 0) {
    double e = 0.0;
    for (long b = 0; b < D; ++b) e += w[b] * mdiag(b);
    return e;
  }
  std::discrete_distribution<long> dist(w.begin(), w.end());
  double acc = 0.0;
  for (long s = 0; s < n_shots; ++s) acc += mdiag(dist(rng));
  return acc / static_cast<double>(n_shots);
}

bool is_pti_everywhere(const DensityMatrix& rho) {
  const auto diag = diagnostics(rho);
  return diag.is_real && std::all_of(diag.is_pti_per_site.begin(), diag.is_pti_per_site.end(), [](bool b) { return b; });
}

}  // namespace

OverlapEstimate estimate_overlap(const DensityMatrix& rho1, const DensityMatrix& rho2, const OverlapParams& params,
                                 long n_settings, long n_shots, std::uint64_t seed, int threads) {
  if (!(rho1.dims() == rho2.dims())) throw ValidationError("overlap: states have different dimensions");
  if (n_settings < 2) throw ValidationError("overlap: n_settings must be >= 2");
  if (n_shots < 0) throw ValidationError("overlap: n_shots must be >= 0");
  const OverlapParams& p = params;
  if (p.gamma == 0.0 || p.eta == 0.0) throw ValidationError("overlap: params must come from validate_overlap_params");
  const int d = rho1.d(), n = rho1.n();
  const long D = rho1.dim();
  switch (p.variant) {
    case OverlapVariant::local_combo:
      if (n != 2) throw ValidationError("overlap: local_combo needs a bipartite system");
      [[fallthrough]];
    case OverlapVariant::local_rrm_pti:
      if (p.d != d) throw ValidationError("overlap: params.d must equal the local dimension");
      break;
    case OverlapVariant::global:
      if (p.d != D) throw ValidationError("overlap: params.d must equal the total dimension for the global variant");
      break;
  }

  OverlapEstimate est;
  est.variant = p.variant;
  est.n_settings = n_settings;
  est.n_shots = n_shots;
  est.assumption_violated = p.variant == OverlapVariant::local_rrm_pti
                                ? !is_pti_everywhere(rho2)
                                : rho2.matrix().imag().cwiseAbs().maxCoeff() > tol::pti;

  const CMatrix m1 = diag_obs(d, p.alpha1, p.alpha2);
  const CMatrix m2 = diag_obs(d, p.beta1, p.beta2);
  const CMatrix mh = imag_obs(d);
  auto full = [n](const CMatrix& m) {
    CMatrix out = m;
    for (int j = 1; j < n; ++j) out = kron(out, m);
    return out;
  };
  const CMatrix M1 = full(m1), M2 = full(m2), Mh = full(mh);
  RVector g1 = RVector::Zero(D), g2 = RVector::Zero(D);
  g1(0) = p.alpha1;
  g1(D - 1) += p.alpha2;
  g2(0) = p.beta1;
  g2(D - 1) += p.beta2;

  const double combo_real = 1.0 / (4.0 * p.gamma * p.gamma);
  const double combo_imag = 1.0 / (4.0 * p.eta * p.eta);
  const double pti_scale = std::pow(2.0 * p.gamma, -n);
  const double global_scale = 1.0 / (2.0 * p.gamma);

  std::vector<double> values(n_settings);
  parallel_for(static_cast<std::size_t>(n_settings), threads, [&](std::size_t i) {
    Rng rng = make_rng({seed, static_cast<std::uint64_t>(i)});
    if (p.variant == OverlapVariant::global) {
      const RMatrix o = haar_orthogonal(static_cast<int>(D), rng);
      const double e1 = global_expectation(rho1.matrix(), o, g1, n_shots, rng);
      const double e2 = global_expectation(rho2.matrix(), o, g2, n_shots, rng);
      values[i] = global_scale * e1 * e2;
      return;
    }
    std::vector<CMatrix> settings(n);
    for (int j = 0; j < n; ++j) settings[j] = haar_orthogonal(d, rng).cast<cplx>();
    const bool combo = p.variant == OverlapVariant::local_combo;
    double e1, e2, h1 = 0.0, h2 = 0.0;
    if (n_shots == 0) {
      CMatrix r1 = rho1.matrix(), r2 = rho2.matrix();
      for (int j = 0; j < n; ++j) {
        r1 = apply_local(r1, rho1.dims(), j, settings[j]);
        r2 = apply_local(r2, rho2.dims(), j, settings[j]);
      }
      e1 = trace_product(r1, M1);
      e2 = trace_product(r2, M2);
      if (combo) {
        h1 = trace_product(r1, Mh);
        h2 = trace_product(r2, Mh);
      }
    } else {
      e1 = expectation_value(rho1, settings, std::vector<CMatrix>(n, m1), n_shots, rng);
      e2 = expectation_value(rho2, settings, std::vector<CMatrix>(n, m2), n_shots, rng);
      if (combo) {
        h1 = expectation_value(rho1, settings, std::vector<CMatrix>(n, mh), n_shots, rng);
        h2 = expectation_value(rho2, settings, std::vector<CMatrix>(n, mh), n_shots, rng);
      }
    }
    values[i] = combo ? combo_real * e1 * e2 + combo_imag * h1 * h2 : pti_scale * e1 * e2;
  });

  double sum = 0.0;
  for (double v : values) sum += v;
  est.value = sum / static_cast<double>(n_settings);
  double ss = 0.0;
  for (double v : values) ss += (v - est.value) * (v - est.value);
  est.std_err = std::sqrt(ss / (n_settings - 1.0) / static_cast<double>(n_settings));
  return est;
}

FidelityEstimate cross_platform_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                         const OverlapParams& params, long n_settings, std::uint64_t seed,
                                         int threads) {
  FidelityEstimate f;
  f.overlap = estimate_overlap(rho1, rho2, params, n_settings, 0, derive_seed(seed, {0}), threads);
  f.purity1 = estimate_overlap(rho1, rho1, params, n_settings, 0, derive_seed(seed, {1}), threads);
  f.purity2 = estimate_overlap(rho2, rho2, params, n_settings, 0, derive_seed(seed, {2}), threads);
  const OverlapEstimate& pm = f.purity1.value >= f.purity2.value ? f.purity1 : f.purity2;
  if (pm.value <= 0.0) throw ValidationError("cross_platform_fidelity: nonpositive purity estimate; increase n_settings");
  f.value = f.overlap.value / pm.value;
  const double a = f.overlap.std_err / pm.value;
  const double b = f.overlap.value * pm.std_err / (pm.value * pm.value);
  f.std_err = std::sqrt(a * a + b * b);
  return f;
}

}  // namespace rrm
