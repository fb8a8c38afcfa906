#include "rrm/linalg.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "rrm/state.hpp"

namespace rrm {

long ipow(long base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::vector<int> digits(long flat, int base, int count) {
  std::vector<int> out(count);
  for (int i = count - 1; i >= 0; --i) {
    out[i] = static_cast<int>(flat % base);
    flat /= base;
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMatrix kron_all(std::span<const CMatrix> factors) {
  if (factors.empty()) return CMatrix::Identity(1, 1);
  CMatrix out = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

CMatrix contract_first(const CMatrix& x, const CMatrix& a) {
  const Eigen::Index d = a.rows();
  if (a.cols() != d || x.rows() != x.cols() || x.rows() % d != 0)
    throw ValidationError("contract_first: dimension mismatch");
  const Eigen::Index r = x.rows() / d;
  CMatrix y = CMatrix::Zero(r, r);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      if (a(i, j) != cplx(0.0)) y += a(i, j) * x.block(j * r, i * r, r, r);
  return y;
}

cplx product_expectation(const CMatrix& x, std::span<const CMatrix> ops) {
  if (ops.empty()) return x.trace();
  CMatrix cur = contract_first(x, ops[0]);
  for (std::size_t k = 1; k < ops.size(); ++k) cur = contract_first(cur, ops[k]);
  return cur(0, 0);
}

namespace {

void check_site(const DimSpec& dims, int site) {
  if (site < 0 || site >= dims.n) throw ValidationError("site index out of range");
}

}  // namespace

namespace {

// Left multiplication by U on one site. Column-major storage makes the data a
// sequence of (d x inner) blocks indexed by (column, outer).
CMatrix left_local(const CMatrix& x, long d, long outer, long inner, const CMatrix& u) {
  CMatrix y = CMatrix::Zero(x.rows(), x.cols());
  const long blocks = outer * x.cols();
  const long bs = d * inner;
  const double* src = reinterpret_cast<const double*>(x.data());
  double* dst = reinterpret_cast<double*>(y.data());
  for (long k = 0; k < blocks; ++k)
    for (long a = 0; a < d; ++a) {
      double* out = dst + 2 * (k * bs + a * inner);
      for (long b = 0; b < d; ++b) {
        const double wr = u(a, b).real(), wi = u(a, b).imag();
        if (wr == 0.0 && wi == 0.0) continue;
        const double* in = src + 2 * (k * bs + b * inner);
        for (long i = 0; i < inner; ++i) {
          out[2 * i] += wr * in[2 * i] - wi * in[2 * i + 1];
          out[2 * i + 1] += wr * in[2 * i + 1] + wi * in[2 * i];
        }
      }
    }
  return y;
}

}  // namespace

CMatrix apply_local(const CMatrix& x, const DimSpec& dims, int site, const CMatrix& u) {
  check_site(dims, site);
  const long d = dims.d;
  if (x.rows() != dims.total() || x.cols() != dims.total() || u.rows() != d || u.cols() != d)
    throw ValidationError("apply_local: dimension mismatch");
  const long outer = ipow(d, site);
  const long inner = ipow(d, dims.n - site - 1);
  // X U^† = (U X^†)^†.
  const CMatrix y = left_local(x, d, outer, inner, u);
  return left_local(y.adjoint(), d, outer, inner, u).adjoint();
}

CVector apply_local(const CVector& v, const DimSpec& dims, int site, const CMatrix& a) {
  check_site(dims, site);
  const long d = dims.d;
  if (v.size() != dims.total() || a.rows() != d || a.cols() != d)
    throw ValidationError("apply_local: dimension mismatch");
  const long outer = ipow(d, site);
  const long inner = ipow(d, dims.n - site - 1);
  CVector out = CVector::Zero(v.size());
  for (long o = 0; o < outer; ++o)
    for (long i = 0; i < inner; ++i)
      for (long r = 0; r < d; ++r) {
        cplx acc = 0.0;
        for (long c = 0; c < d; ++c) acc += a(r, c) * v((o * d + c) * inner + i);
        out((o * d + r) * inner + i) = acc;
      }
  return out;
}

CMatrix partial_trace(const CMatrix& x, const DimSpec& dims, std::vector<int> keep) {
  if (keep.empty()) throw ValidationError("partial_trace: empty keep set");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw ValidationError("partial_trace: repeated party");
  for (int k : keep) check_site(dims, k);
  if (x.rows() != dims.total() || x.cols() != dims.total())
    throw ValidationError("partial_trace: dimension mismatch");

  std::vector<int> traced;
  for (int s = 0; s < dims.n; ++s)
    if (!std::binary_search(keep.begin(), keep.end(), s)) traced.push_back(s);

  const int nk = static_cast<int>(keep.size());
  const long dk = ipow(dims.d, nk);
  const long dt = ipow(dims.d, static_cast<int>(traced.size()));
  // Full index for (kept digits, traced digits).
  auto full_index = [&](long kflat, long tflat) {
    std::vector<int> all(dims.n);
    auto kd = digits(kflat, dims.d, nk);
    auto td = digits(tflat, dims.d, static_cast<int>(traced.size()));
    for (int i = 0; i < nk; ++i) all[keep[i]] = kd[i];
    for (std::size_t i = 0; i < traced.size(); ++i) all[traced[i]] = td[i];
    long idx = 0;
    for (int v : all) idx = idx * dims.d + v;
    return idx;
  };
  std::vector<long> table(dk * dt);
  for (long k = 0; k < dk; ++k)
    for (long t = 0; t < dt; ++t) table[k * dt + t] = full_index(k, t);

  CMatrix out = CMatrix::Zero(dk, dk);
  for (long r = 0; r < dk; ++r)
    for (long c = 0; c < dk; ++c) {
      cplx acc = 0.0;
      for (long t = 0; t < dt; ++t) acc += x(table[r * dt + t], table[c * dt + t]);
      out(r, c) = acc;
    }
  return out;
}

CMatrix partial_transpose(const CMatrix& x, const DimSpec& dims, int site) {
  check_site(dims, site);
  if (x.rows() != dims.total() || x.cols() != dims.total())
    throw ValidationError("partial_transpose: dimension mismatch");
  const long d = dims.d;
  const long inner = ipow(d, dims.n - site - 1);
  const long D = dims.total();
  CMatrix out(D, D);
  for (long r = 0; r < D; ++r) {
    const long rs = (r / inner) % d;
    for (long c = 0; c < D; ++c) {
      const long cs = (c / inner) % d;
      out(r - rs * inner + cs * inner, c - cs * inner + rs * inner) = x(r, c);
    }
  }
  return out;
}

RVector singular_values(const CMatrix& x) {
  Eigen::JacobiSVD<CMatrix> svd(x);
  return svd.singularValues();
}

RVector singular_values(const RMatrix& x) {
  Eigen::JacobiSVD<RMatrix> svd(x);
  return svd.singularValues();
}

double trace_norm(const CMatrix& x) { return singular_values(x).sum(); }

double hs_norm(const CMatrix& x) { return x.norm(); }

RVector hermitian_eigenvalues(const CMatrix& x) {
  const CMatrix h = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double hermitian_residual(const CMatrix& x) {
  if (x.size() == 0) return 0.0;
  return (x - x.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_residual(const CMatrix& x) {
  return (x.adjoint() * x - CMatrix::Identity(x.cols(), x.cols())).norm();
}

}  // namespace rrm
