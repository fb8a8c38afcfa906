#include "rrm/shadows.hpp"

#include <algorithm>
#include <cmath>

#include "rrm/haar.hpp"
#include "rrm/linalg.hpp"

namespace rrm {

std::string to_string(Ensemble e) {
  switch (e) {
    case Ensemble::global_orthogonal: return "global_orthogonal";
    case Ensemble::local_orthogonal: return "local_orthogonal";
    case Ensemble::global_unitary: return "global_unitary";
    case Ensemble::local_unitary: return "local_unitary";
  }
  return "?";
}

Ensemble ensemble_from_string(const std::string& s) {
  for (Ensemble e : {Ensemble::global_orthogonal, Ensemble::local_orthogonal, Ensemble::global_unitary,
                     Ensemble::local_unitary})
    if (to_string(e) == s) return e;
  throw ValidationError("unknown ensemble '" + s + "'");
}

bool is_local(Ensemble e) { return e == Ensemble::local_orthogonal || e == Ensemble::local_unitary; }
bool is_orthogonal(Ensemble e) { return e == Ensemble::global_orthogonal || e == Ensemble::local_orthogonal; }

namespace {

CMatrix orthogonal_map(const CMatrix& x, ChannelDirection dir) {
  const double D = static_cast<double>(x.rows());
  const CMatrix id = CMatrix::Identity(x.rows(), x.rows());
  if (dir == ChannelDirection::forward) return (x.trace() * id + x + x.transpose()) / (D + 2.0);
  return ((D + 2.0) * x - x.trace() * id) / 2.0;
}

void require_square(const CMatrix& x, const DimSpec& dims) {
  const DimSpec ds = DimSpec::make(dims.d, dims.n);
  if (x.rows() != x.cols()) throw ValidationError("channel: matrix is not square");
  if (x.rows() != ds.total()) throw ValidationError("channel: matrix size does not match d^n");
}

// Applies the map X ↦ f(X) on one site through the operator basis |j⟩⟨k|.
CMatrix apply_site_map(const CMatrix& x, const DimSpec& dims, int site, ChannelDirection dir) {
  const int d = dims.d;
  const long D = x.rows();
  const long stride = ipow(d, dims.n - 1 - site);
  const long block = stride * d;
  CMatrix out = CMatrix::Zero(D, D);
  CMatrix local(d, d);
  for (long r0 = 0; r0 < D; r0 += block)
    for (long rs = 0; rs < stride; ++rs)
      for (long c0 = 0; c0 < D; c0 += block)
        for (long cs = 0; cs < stride; ++cs) {
          for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) local(j, k) = x(r0 + j * stride + rs, c0 + k * stride + cs);
          const CMatrix mapped = orthogonal_map(local, dir);
          for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) out(r0 + j * stride + rs, c0 + k * stride + cs) = mapped(j, k);
        }
  return out;
}

struct Prepared {
  const DensityMatrix* rho;
  bool real = false;
  bool pti = false;
  RMatrix re;
};

Prepared prepare(const DensityMatrix& rho, Ensemble ensemble) {
  Prepared p;
  p.rho = &rho;
  p.real = rho.matrix().imag().cwiseAbs().maxCoeff() <= tol::pti;
  if (p.real) p.re = rho.matrix().real();
  if (ensemble == Ensemble::local_orthogonal) {
    p.pti = true;
    for (int j = 0; j < rho.n() && p.pti; ++j)
      p.pti = (rho.matrix() - partial_transpose(rho.matrix(), rho.dims(), j)).norm() < tol::pti;
  }
  return p;
}

long sample_index(const std::vector<double>& weights, Rng& rng) {
  std::discrete_distribution<long> dist(weights.begin(), weights.end());
  return dist(rng);
}

ShadowSnapshot draw(const Prepared& prep, Ensemble ensemble, const SeedPath& path) {
  const DensityMatrix& rho = *prep.rho;
  const long D = rho.dim();
  ShadowSnapshot s;
  s.ensemble = ensemble;
  s.seed_path = path;
  s.dims = rho.dims();
  Rng rng = make_rng(path);
  std::vector<double> w(D);

  if (!is_local(ensemble)) {
    if (ensemble == Ensemble::global_orthogonal) {
      const RMatrix o = haar_orthogonal(static_cast<int>(D), rng);
      if (prep.real) {
        const RMatrix m = o * prep.re;
        for (long b = 0; b < D; ++b) w[b] = std::max(0.0, m.row(b).dot(o.row(b)));
      } else {
        const CMatrix m = o.cast<cplx>() * rho.matrix();
        for (long b = 0; b < D; ++b) w[b] = std::max(0.0, (m.row(b) * o.row(b).transpose().cast<cplx>())(0).real());
      }
      const long b = sample_index(w, rng);
      s.outcome = {static_cast<int>(b)};
      s.factors = {CVector(o.row(b).transpose().cast<cplx>())};
      s.assumption_violated = !prep.real;
    } else {
      const CMatrix u = haar_unitary(static_cast<int>(D), rng);
      const CMatrix m = u * rho.matrix();
      for (long b = 0; b < D; ++b) w[b] = std::max(0.0, (m.row(b) * u.row(b).adjoint())(0).real());
      const long b = sample_index(w, rng);
      s.outcome = {static_cast<int>(b)};
      s.factors = {CVector(u.row(b).adjoint())};
    }
    return s;
  }

  const int d = rho.d(), n = rho.n();
  std::vector<CMatrix> ops(n);
  for (int j = 0; j < n; ++j)
    ops[j] = ensemble == Ensemble::local_orthogonal ? CMatrix(haar_orthogonal(d, rng).cast<cplx>())
                                                    : haar_unitary(d, rng);
  CMatrix r = rho.matrix();
  for (int j = 0; j < n; ++j) r = apply_local(r, rho.dims(), j, ops[j]);
  for (long b = 0; b < D; ++b) w[b] = std::max(0.0, r(b, b).real());
  const long b = sample_index(w, rng);
  s.outcome = digits(b, d, n);
  for (int j = 0; j < n; ++j) s.factors.push_back(ops[j].row(s.outcome[j]).adjoint());
  s.assumption_violated = ensemble == Ensemble::local_orthogonal && !prep.pti;
  return s;
}

// (a, c) with snapshot factor a·vv† − c·I.
std::pair<double, double> inverse_coeffs(Ensemble e, long dim) {
  const double D = static_cast<double>(dim);
  if (is_orthogonal(e)) return {(D + 2.0) / 2.0, 0.5};
  return {D + 1.0, 1.0};
}

}  // namespace

CMatrix global_orthogonal_channel(const CMatrix& x, ChannelDirection dir, const DimSpec& dims) {
  require_square(x, dims);
  return orthogonal_map(x, dir);
}

CMatrix local_orthogonal_channel(const CMatrix& x, ChannelDirection dir, const DimSpec& dims) {
  require_square(x, dims);
  CMatrix out = x;
  for (int j = 0; j < dims.n; ++j) out = apply_site_map(out, dims, j, dir);
  return out;
}

CMatrix ShadowSnapshot::matrix() const {
  if (!is_local(ensemble)) {
    const auto [a, c] = inverse_coeffs(ensemble, dims.total());
    const CVector& v = factors.at(0);
    return a * v * v.adjoint() - c * CMatrix::Identity(v.size(), v.size());
  }
  const auto [a, c] = inverse_coeffs(ensemble, dims.d);
  CMatrix out = CMatrix::Identity(1, 1);
  for (const auto& v : factors) out = kron(out, CMatrix(a * v * v.adjoint() - c * CMatrix::Identity(v.size(), v.size())));
  return out;
}

double ShadowSnapshot::expectation(const CMatrix& g) const {
  const long D = dims.total();
  if (g.rows() != D || g.cols() != D) throw ValidationError("snapshot expectation: dimension mismatch");
  if (!is_local(ensemble)) {
    const auto [a, c] = inverse_coeffs(ensemble, D);
    const CVector& v = factors.at(0);
    return a * (v.adjoint() * g * v)(0).real() - c * g.trace().real();
  }
  return (g * matrix()).trace().real();
}

double ShadowSnapshot::fidelity(const CVector& psi) const {
  const long D = dims.total();
  if (psi.size() != D) throw ValidationError("snapshot fidelity: dimension mismatch");
  if (!is_local(ensemble)) {
    const auto [a, c] = inverse_coeffs(ensemble, D);
    return a * std::norm(factors.at(0).dot(psi)) - c * psi.squaredNorm();
  }
  const auto [a, c] = inverse_coeffs(ensemble, dims.d);
  CVector x = psi;
  for (int j = 0; j < dims.n; ++j) {
    const CVector& v = factors[j];
    const CMatrix op = a * v * v.adjoint() - c * CMatrix::Identity(dims.d, dims.d);
    x = apply_local(x, dims, j, op);
  }
  return psi.dot(x).real();
}

ShadowSnapshot draw_snapshot(const DensityMatrix& rho, Ensemble ensemble, const SeedPath& path) {
  return draw(prepare(rho, ensemble), ensemble, path);
}

ObservableEstimate estimate_observable(const std::vector<ShadowSnapshot>& shadows, const CMatrix& g) {
  if (shadows.empty()) throw ValidationError("estimate_observable: no snapshots");
  const long n = static_cast<long>(shadows.size());
  std::vector<double> v(n);
  for (long i = 0; i < n; ++i) v[i] = shadows[i].expectation(g);
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  ObservableEstimate e;
  e.mean = mean;
  e.n = n;
  e.std_err = n > 1 ? std::sqrt(ss / (n - 1.0) / static_cast<double>(n)) : 0.0;
  return e;
}

std::vector<ShadowGridPoint> fidelity_error_experiment(const ShadowExperimentConfig& config) {
  if (config.n_runs < 1) throw ValidationError("shadow experiment: n_runs must be >= 1");
  if (config.grid_values.empty() || config.setting_counts.empty() || config.ensembles.empty())
    throw ValidationError("shadow experiment: grids must be nonempty");
  for (long n : config.setting_counts)
    if (n < 1) throw ValidationError("shadow experiment: setting counts must be >= 1");

  const std::size_t ng = config.grid_values.size();
  const std::size_t ne = config.ensembles.size();
  const std::size_t ns = config.setting_counts.size();
  const std::size_t nr = static_cast<std::size_t>(config.n_runs);

  std::vector<DensityMatrix> states;
  std::vector<double> exact;
  for (double g : config.grid_values) {
    StateSpec spec = config.state;
    spec.params[config.grid_param] = g;
    states.push_back(named_state(spec));
    const CVector& t = config.target;
    if (t.size() != states.back().dim()) throw ValidationError("shadow experiment: target dimension mismatch");
    exact.push_back((t.adjoint() * states.back().matrix() * t)(0).real() / t.squaredNorm());
  }
  std::vector<std::vector<Prepared>> prepared(ng);
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t e = 0; e < ne; ++e) prepared[g].push_back(prepare(states[g], config.ensembles[e]));

  const CVector target = config.target / config.target.norm();
  const std::size_t tasks = ng * ne * ns * nr;
  std::vector<double> estimates(tasks);
  std::vector<char> violated(tasks, 0);
  parallel_for(tasks, config.threads, [&](std::size_t i) {
    const std::size_t r = i % nr;
    const std::size_t s = (i / nr) % ns;
    const std::size_t e = (i / (nr * ns)) % ne;
    const std::size_t g = i / (nr * ns * ne);
    const std::uint64_t key = derive_seed(config.seed, {g, e, s, r});
    const long n = config.setting_counts[s];
    double acc = 0.0;
    for (long k = 0; k < n; ++k) {
      const ShadowSnapshot snap = draw(prepared[g][e], config.ensembles[e], SeedPath{key, static_cast<std::uint64_t>(k)});
      acc += snap.fidelity(target);
      if (snap.assumption_violated) violated[i] = 1;
    }
    estimates[i] = acc / static_cast<double>(n);
  });

  std::vector<ShadowGridPoint> out;
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t e = 0; e < ne; ++e)
      for (std::size_t s = 0; s < ns; ++s) {
        ShadowGridPoint pt;
        pt.grid_value = config.grid_values[g];
        pt.ensemble = config.ensembles[e];
        pt.n_settings = config.setting_counts[s];
        pt.n_runs = config.n_runs;
        pt.exact = exact[g];
        const std::size_t base = ((g * ne + e) * ns + s) * nr;
        double err = 0.0, est = 0.0;
        for (std::size_t r = 0; r < nr; ++r) {
          err += std::abs(estimates[base + r] - exact[g]);
          est += estimates[base + r];
          if (violated[base + r]) pt.assumption_violated = true;
        }
        pt.mean_error = err / static_cast<double>(nr);
        pt.mean_estimate = est / static_cast<double>(nr);
        double ss = 0.0;
        for (std::size_t r = 0; r < nr; ++r) {
          const double dev = std::abs(estimates[base + r] - exact[g]) - pt.mean_error;
          ss += dev * dev;
        }
        pt.std = nr > 1 ? std::sqrt(ss / (nr - 1.0)) : 0.0;
        out.push_back(pt);
      }
  return out;
}

}  // namespace rrm
