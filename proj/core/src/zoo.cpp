#include "rrm/zoo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <set>
#include <string>

#include "rrm/correlation.hpp"
#include "rrm/diagnostics.hpp"
#include "rrm/entanglement.hpp"
#include "rrm/ggm.hpp"
#include "rrm/haar.hpp"
#include "rrm/linalg.hpp"
#include "rrm/moments.hpp"

namespace rrm {

namespace {

using Params = std::map<std::string, double>;

double param(const Params& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

int int_param(const Params& p, const std::string& key, int fallback) {
  const double v = param(p, key, fallback);
  if (v != std::round(v)) throw ValidationError("parameter '" + key + "' must be an integer");
  return static_cast<int>(v);
}

void allow_only(const std::string& name, const Params& p, std::initializer_list<const char*> keys) {
  std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, v] : p)
    if (!ok.count(k)) throw ValidationError("state '" + name + "' has no parameter '" + k + "'");
}

double probability(const Params& p, const std::string& key, double fallback) {
  const double v = param(p, key, fallback);
  if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("parameter '" + key + "' must lie in [0, 1]");
  return v;
}

CVector basis_vector(long dim, long idx) {
  CVector v = CVector::Zero(dim);
  v(idx) = 1.0;
  return v;
}

CMatrix mix_with_identity(const CMatrix& m, double weight) {
  const long D = m.rows();
  return weight * m + (1.0 - weight) * CMatrix::Identity(D, D) / static_cast<double>(D);
}

DensityMatrix table1_state(int k) {
  const DimSpec dims{3, 2};
  auto ket = [](int a, int b) { return basis_vector(9, 3 * a + b); };
  const cplx i(0.0, 1.0);
  switch (k) {
    case 1: return DensityMatrix::pure(ket(0, 0) + i * ket(2, 2), dims);
    case 2: return DensityMatrix::pure(i * ket(0, 2) + i * ket(1, 2) + ket(1, 0) + ket(1, 2), dims);
    case 3: return DensityMatrix::pure(ket(0, 0) + ket(2, 2), dims);
    default: throw ValidationError("table1: k must be 1, 2 or 3");
  }
}

DensityMatrix upb_tiles() {
  const CVector e0 = basis_vector(3, 0), e1 = basis_vector(3, 1), e2 = basis_vector(3, 2);
  const double r2 = std::numbers::sqrt2;
  const std::array<CVector, 5> psi = {
      kron(e0, CVector((e0 - e1) / r2)),
      kron(e2, CVector((e1 - e2) / r2)),
      kron(CVector((e0 - e1) / r2), e2),
      kron(CVector((e1 - e2) / r2), e0),
      kron(CVector((e0 + e1 + e2) / std::sqrt(3.0)), CVector((e0 + e1 + e2) / std::sqrt(3.0))),
  };
  CMatrix m = CMatrix::Identity(9, 9);
  for (const auto& v : psi) m -= v * v.adjoint();
  m /= 4.0;
  DensityMatrix rho(m, {3, 2});
  const auto diag = diagnostics(rho);
  for (int s = 0; s < 2; ++s)
    if (!diag.is_ppt_per_site[s] || !diag.is_pti_per_site[s])
      throw std::logic_error("upb_tiles: construction is not PPT and PTI");
  return rho;
}

DensityMatrix piani() {
  const CMatrix id = CMatrix::Identity(2, 2);
  CMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, cplx(0, -1), cplx(0, 1), 0;
  sz << 1, 0, 0, -1;
  const std::array<CMatrix, 4> sigma = {id, sx, sy, sz};
  CVector phi = CVector::Zero(16);
  for (int l = 0; l < 4; ++l) phi(l * 4 + l) = 0.5;
  const std::array<std::pair<int, int>, 6> terms = {{{0, 2}, {1, 1}, {2, 3}, {3, 1}, {3, 2}, {3, 3}}};
  CMatrix m = CMatrix::Zero(16, 16);
  for (const auto& [j, k] : terms) {
    const CMatrix op = kron(CMatrix::Identity(4, 4), kron(sigma[j], sigma[k]));
    const CVector v = op * phi;
    m += v * v.adjoint();
  }
  m /= 6.0;
  DensityMatrix rho(m, {4, 2});
  const auto diag = diagnostics(rho);
  if (!diag.is_ppt_per_site[0] || !diag.is_ppt_per_site[1]) throw std::logic_error("piani: state is not PPT");
  return rho;
}

bool chessboard_ok(const CMatrix& m, bool require_detection) {
  const StateCheck c = check_state(m);
  if (!c.ok()) return false;
  const DimSpec dims{3, 2};
  const auto diag = diagnostics(m, dims);
  for (int s = 0; s < 2; ++s)
    if (!diag.is_ppt_per_site[s] || !diag.is_pti_per_site[s]) return false;
  if (!require_detection) return true;
  const CorrelationTensor t = correlation_tensor(m, dims, ggm_basis(3));
  const double c2 = exact_sector_moments(t).Q2;
  const double c4 = exact_fourth_moment(t);
  return schmidt_verdict(c2, c4, 3).certified_sn_lower_bound >= 2;
}

DensityMatrix chessboard(const Params& p) {
  if (p.empty()) {
    const ChessboardParams cp = validated_chessboard_params().params;
    return DensityMatrix(chessboard_matrix(cp), {3, 2});
  }
  ChessboardParams cp;
  cp.a = param(p, "a", 1.0);
  cp.b = param(p, "b", 1.0);
  cp.c = param(p, "c", 1.0);
  cp.d = param(p, "d", 1.0);
  cp.m = param(p, "m", 1.0);
  cp.n = param(p, "n", 1.0);
  const CMatrix m = chessboard_matrix(cp);
  if (!chessboard_ok(m, false)) throw ValidationError("chessboard: parameters give a non-PSD, non-PPT or non-PTI state");
  return DensityMatrix(m, {3, 2});
}

DensityMatrix rho_u(double u) {
  const auto cands = rho0_candidates();
  for (const auto& c : cands)
    if (c.min_eigenvalue >= -tol::psd) return DensityMatrix(mix_with_identity(c.matrix, u), {3, 2});
  // No convention yields a state; keep the primary one and let validation decide.
  const CMatrix m = mix_with_identity(cands.front().matrix, u);
  const StateCheck check = check_state(m);
  if (!check.psd()) {
    std::string msg = "rho_u: operator is not positive semidefinite at u = " + std::to_string(u) +
                      " (min eigenvalue " + std::to_string(check.min_eigenvalue) + "); rho0 min eigenvalues:";
    for (const auto& c : cands) msg += " " + c.convention + "=" + std::to_string(c.min_eigenvalue);
    throw ValidationError(msg);
  }
  return DensityMatrix(m, {3, 2});
}

}  // namespace

CVector ghz_vector(int n, int sign) {
  if (n < 1) throw ValidationError("ghz: n must be >= 1");
  const long D = ipow(2, n);
  CVector v = CVector::Zero(D);
  v(0) = 1.0 / std::numbers::sqrt2;
  v(D - 1) = (sign >= 0 ? 1.0 : -1.0) / std::numbers::sqrt2;
  return v;
}

CVector max_entangled_vector(int d) {
  CVector v = CVector::Zero(d * d);
  for (int j = 0; j < d; ++j) v(j * d + j) = 1.0 / std::sqrt(static_cast<double>(d));
  return v;
}

CMatrix chessboard_matrix(const ChessboardParams& p) {
  if (p.n == 0.0 || p.m == 0.0) throw ValidationError("chessboard: m and n must be nonzero");
  const double s = p.a * p.c / p.n;
  const double t = p.a * p.d / p.m;
  Eigen::Matrix<double, 9, 4> v = Eigen::Matrix<double, 9, 4>::Zero();
  // Columns are V1..V4 with components ordered |00⟩, |01⟩, ..., |22⟩.
  v(0, 0) = p.m; v(2, 0) = s; v(4, 0) = p.n;
  v(1, 1) = p.a; v(3, 1) = p.b; v(5, 1) = p.c;
  v(0, 2) = p.n; v(4, 2) = -p.m; v(6, 2) = t;
  v(1, 3) = p.b; v(3, 3) = -p.a; v(7, 3) = p.d;
  const RMatrix m = v * v.transpose();
  return (m / m.trace()).cast<cplx>();
}

ChessboardSelection validated_chessboard_params() {
  static std::once_flag once;
  static ChessboardSelection cached;
  std::call_once(once, [] {
    ChessboardSelection sel;
    sel.candidates_tried = 1;
    if (chessboard_ok(chessboard_matrix(sel.params), true)) {
      cached = sel;
      return;
    }
    const std::array<std::vector<double>, 2> grids = {
        std::vector<double>{0.5, 1.0, 1.5}, std::vector<double>{0.5, 1.0, 1.5, -0.5, -1.0, -1.5}};
    for (const auto& g : grids) {
      const long k = static_cast<long>(g.size());
      const long count = ipow(k, 6);
      for (long i = 0; i < count; ++i) {
        const auto dg = digits(i, static_cast<int>(k), 6);
        ChessboardParams p{g[dg[0]], g[dg[1]], g[dg[2]], g[dg[3]], g[dg[4]], g[dg[5]]};
        ++sel.candidates_tried;
        if (chessboard_ok(chessboard_matrix(p), true)) {
          sel.params = p;
          sel.from_sweep = true;
          cached = sel;
          return;
        }
      }
    }
    throw std::logic_error("chessboard: no detected instance in the parameter sweep");
  });
  return cached;
}

std::vector<Rho0Candidate> rho0_candidates() {
  const GGMBasis b = ggm_basis(3);
  // Positions of λ1, λ3, λ4, λ6 in the basis for each convention.
  struct Convention {
    const char* name;
    std::array<int, 4> idx;
  };
  // Historical order: λ1 = s01, λ3 = diag(1,-1,0) ∝ first diagonal, λ4 = s02,
  // λ6 = s12, all with tr λ² = 3.
  const std::array<Convention, 2> conventions = {{{"real_first", {1, 3, 4, 6}}, {"historical", {1, 4, 2, 3}}}};
  std::vector<Rho0Candidate> out;
  for (const auto& c : conventions) {
    const CMatrix& l1 = b[c.idx[0]];
    const CMatrix& l3 = b[c.idx[1]];
    const CMatrix& l4 = b[c.idx[2]];
    const CMatrix& l6 = b[c.idx[3]];
    CMatrix m = CMatrix::Identity(9, 9) + 2.0 * kron(l1, l1) + kron(l1, l3) + kron(l3, l3) + kron(l4, l4) +
                2.0 * kron(l6, l6);
    m /= 9.0;
    Rho0Candidate cand;
    cand.convention = c.name;
    cand.matrix = m;
    cand.min_eigenvalue = hermitian_eigenvalues(m).minCoeff();
    out.push_back(cand);
  }
  return out;
}

DensityMatrix bell_diagonal(const RMatrix& p) {
  const long d = p.rows();
  if (d < 2 || p.cols() != d) throw ValidationError("bell_diagonal: P must be a square d×d table");
  if (p.minCoeff() < 0.0 || std::abs(p.sum() - 1.0) > 1e-12)
    throw ValidationError("bell_diagonal: P must be a probability distribution");
  const cplx omega = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(d));
  CMatrix x = CMatrix::Zero(d, d), z = CMatrix::Zero(d, d);
  for (long j = 0; j < d; ++j) {
    x((j + 1) % d, j) = 1.0;
    z(j, j) = std::pow(omega, static_cast<double>(j));
  }
  const CVector phi = max_entangled_vector(static_cast<int>(d));
  CMatrix m = CMatrix::Zero(d * d, d * d);
  CMatrix za = CMatrix::Identity(d, d);
  for (long a = 0; a < d; ++a) {
    CMatrix xb = CMatrix::Identity(d, d);
    for (long b = 0; b < d; ++b) {
      if (p(a, b) > 0.0) {
        const CVector v = kron(za, xb) * phi;
        m += p(a, b) * v * v.adjoint();
      }
      xb = x * xb;
    }
    za = z * za;
  }
  return DensityMatrix(m, {static_cast<int>(d), 2});
}

RMatrix bell_probabilities(int k) {
  RMatrix p = RMatrix::Zero(3, 3);
  switch (k) {
    case 1: p(1, 1) = 0.18; p(1, 2) = 0.82; break;
    case 2: p(0, 0) = 0.52; p(2, 1) = 0.48; break;
    case 3: p(0, 0) = 0.5; p(2, 2) = 0.5; break;
    case 4: p(0, 0) = 0.045; p(1, 1) = 0.2055; p(2, 2) = 0.7495; break;
    default: throw ValidationError("bell: k must be in 1..4");
  }
  return p;
}

DensityMatrix named_state(const StateSpec& spec) {
  const std::string& name = spec.name;
  const Params& p = spec.params;
  if (name == "max_entangled") {
    allow_only(name, p, {"d"});
    const int d = int_param(p, "d", 3);
    DimSpec::make(d, 2);
    return DensityMatrix::pure(max_entangled_vector(d), {d, 2});
  }
  if (name == "maximally_mixed") {
    allow_only(name, p, {"d", "n"});
    return DensityMatrix::maximally_mixed(DimSpec::make(int_param(p, "d", 3), int_param(p, "n", 2)));
  }
  if (name == "isotropic") {
    allow_only(name, p, {"d", "p"});
    const int d = int_param(p, "d", 3);
    DimSpec::make(d, 2);
    const CVector v = max_entangled_vector(d);
    return DensityMatrix(mix_with_identity(v * v.adjoint(), probability(p, "p", 1.0)), {d, 2});
  }
  if (name == "rho0") {
    allow_only(name, p, {});
    return rho_u(1.0);
  }
  if (name == "rho_u") {
    allow_only(name, p, {"u"});
    return rho_u(probability(p, "u", 1.0));
  }
  if (name == "noisy_ghz" || name == "ghz") {
    allow_only(name, p, name == "ghz" ? std::initializer_list<const char*>{"n"}
                                      : std::initializer_list<const char*>{"n", "p"});
    const int n = int_param(p, "n", name == "ghz" ? 3 : 5);
    DimSpec::make(2, n);
    const double q = name == "ghz" ? 0.0 : probability(p, "p", 0.0);
    const CVector plus = ghz_vector(n, +1), minus = ghz_vector(n, -1);
    return DensityMatrix((1.0 - q) * plus * plus.adjoint() + q * minus * minus.adjoint(), {2, n});
  }
  if (name == "table1") {
    allow_only(name, p, {"k"});
    return table1_state(int_param(p, "k", 1));
  }
  if (name == "upb_tiles") {
    allow_only(name, p, {});
    return upb_tiles();
  }
  if (name == "chessboard") {
    allow_only(name, p, {"a", "b", "c", "d", "m", "n"});
    return chessboard(p);
  }
  if (name == "piani") {
    allow_only(name, p, {});
    return piani();
  }
  if (name == "overlap_family") {
    allow_only(name, p, {"p"});
    const CVector v = max_entangled_vector(5);
    return DensityMatrix(mix_with_identity(v * v.adjoint(), probability(p, "p", 1.0)), {5, 2});
  }
  if (name == "bell") {
    allow_only(name, p, {"k"});
    return bell_diagonal(bell_probabilities(int_param(p, "k", 1)));
  }
  throw ValidationError("unknown state '" + name + "'");
}

std::vector<std::string> catalog() {
  return {"max_entangled", "maximally_mixed", "isotropic", "rho0",  "rho_u",          "noisy_ghz", "ghz",
          "table1",        "upb_tiles",       "chessboard", "piani", "overlap_family", "bell"};
}

namespace {

CMatrix hs_random(long D, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix z(D, D);
  for (long c = 0; c < D; ++c)
    for (long r = 0; r < D; ++r) {
      const double re = g(rng);
      const double im = g(rng);
      z(r, c) = cplx(re, im);
    }
  CMatrix m = z * z.adjoint();
  return m / m.trace().real();
}

}  // namespace

DensityMatrix random_state(RandomStateKind kind, const DimSpec& dims, Rng& rng) {
  const DimSpec ds = DimSpec::make(dims.d, dims.n);
  const long D = ds.total();
  switch (kind) {
    case RandomStateKind::pure_haar: {
      const CMatrix u = haar_unitary(static_cast<int>(D), rng);
      return DensityMatrix::pure(u.col(0), ds);
    }
    case RandomStateKind::mixed_hs:
      return DensityMatrix(hs_random(D, rng), ds);
    case RandomStateKind::product: {
      CMatrix m = hs_random(ds.d, rng);
      for (int s = 1; s < ds.n; ++s) m = kron(m, hs_random(ds.d, rng));
      return DensityMatrix(m, ds);
    }
    case RandomStateKind::real_random: {
      for (int attempt = 0; attempt < 100; ++attempt) {
        const CMatrix h = hs_random(D, rng);
        CMatrix m = 0.5 * (h + h.transpose());
        m /= m.trace().real();
        if (check_state(m).ok()) return DensityMatrix(CMatrix(m.real().cast<cplx>()), ds);
      }
      throw std::logic_error("random_state: real_random rejection sampling failed");
    }
  }
  throw ValidationError("random_state: unknown kind");
}

}  // namespace rrm
