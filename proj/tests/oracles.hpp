// Brute-force reference computations for the tests. Nothing here calls the
// library routine it is used to check.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      for (long k = 0; k < b.rows(); ++k)
        for (long l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// GGM matrices written out from their definitions, tr(λλ) = d.
inline std::vector<CMatrix> ggm(int d) {
  std::vector<CMatrix> out{CMatrix::Identity(d, d)};
  const double s = std::sqrt(d / 2.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CMatrix m = CMatrix::Zero(d, d);
      m(j, k) = m(k, j) = s;
      out.push_back(m);
    }
  for (int l = 0; l < d - 1; ++l) {
    CMatrix m = CMatrix::Zero(d, d);
    const double c = std::sqrt(d / ((l + 1.0) * (l + 2.0)));
    for (int j = 0; j <= l; ++j) m(j, j) = c;
    m(l + 1, l + 1) = -(l + 1.0) * c;
    out.push_back(m);
  }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CMatrix m = CMatrix::Zero(d, d);
      m(j, k) = cplx(0, -s);
      m(k, j) = cplx(0, s);
      out.push_back(m);
    }
  return out;
}

// Bipartite T_jk = tr(ρ λ_j ⊗ λ_k).
inline RMatrix correlation(const CMatrix& rho, int d) {
  const auto b = ggm(d);
  RMatrix t(d * d, d * d);
  for (int j = 0; j < d * d; ++j)
    for (int k = 0; k < d * d; ++k) t(j, k) = (rho * kron(b[j], b[k])).trace().real();
  return t;
}

inline CMatrix trace_out_second(const CMatrix& rho, int da, int db) {
  CMatrix out = CMatrix::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k) out(i, j) += rho(i * db + k, j * db + k);
  return out;
}

inline CMatrix trace_out_first(const CMatrix& rho, int da, int db) {
  CMatrix out = CMatrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += rho(k * db + i, k * db + j);
  return out;
}

inline CMatrix transpose_second(const CMatrix& rho, int da, int db) {
  CMatrix out(rho.rows(), rho.cols());
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int c = 0; c < da; ++c)
        for (int e = 0; e < db; ++e) out(a * db + b, c * db + e) = rho(a * db + e, c * db + b);
  return out;
}

inline double trace_norm(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().sum();
}

inline double trace_norm(const RMatrix& m) {
  Eigen::JacobiSVD<RMatrix> svd(m);
  return svd.singularValues().sum();
}

inline double min_eig(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  return es.eigenvalues().minCoeff();
}

// Ginibre-induced mixed state of dimension D.
template <class Engine>
CMatrix ginibre_state(long D, Engine& eng, long rank = -1) {
  std::normal_distribution<double> g;
  const long k = rank < 0 ? D : rank;
  CMatrix z(D, k);
  for (long i = 0; i < D; ++i)
    for (long j = 0; j < k; ++j) z(i, j) = cplx(g(eng), g(eng));
  CMatrix m = z * z.adjoint();
  return m / m.trace();
}

template <class Engine>
CVector random_vector(long D, Engine& eng) {
  std::normal_distribution<double> g;
  CVector v(D);
  for (long i = 0; i < D; ++i) v(i) = cplx(g(eng), g(eng));
  return v / v.norm();
}

template <class Engine>
RMatrix random_orthogonal(int d, Engine& eng) {
  std::normal_distribution<double> g;
  RMatrix z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = g(eng);
  Eigen::HouseholderQR<RMatrix> qr(z);
  RMatrix q = qr.householderQ();
  RMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

template <class Engine>
CMatrix random_unitary(int d, Engine& eng) {
  std::normal_distribution<double> g;
  CMatrix z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = cplx(g(eng), g(eng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

inline CVector ket(long D, long i) {
  CVector v = CVector::Zero(D);
  v(i) = 1.0;
  return v;
}

inline CMatrix phi_plus(int d) {
  CVector v = CVector::Zero(d * d);
  for (int j = 0; j < d; ++j) v(j * d + j) = 1.0 / std::sqrt(static_cast<double>(d));
  return v * v.adjoint();
}

// Lemma-1 coefficients by solving d[[d,1,1],[1,d,1],[1,1,d]]γ = (trA, trSA, trΠA).
inline Eigen::Vector3d second_moment_coeffs(const CMatrix& a, int d) {
  CMatrix s = CMatrix::Zero(d * d, d * d), pi = CMatrix::Zero(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      s(j * d + k, k * d + j) = 1.0;
      pi(j * d + j, k * d + k) = 1.0;
    }
  Eigen::Matrix3d g;
  g << d, 1, 1, 1, d, 1, 1, 1, d;
  g *= d;
  Eigen::Vector3d rhs(a.trace().real(), (s * a).trace().real(), (pi * a).trace().real());
  return g.fullPivLu().solve(rhs);
}

inline double W(int d) {
  const double L = (d - 1.0) * (d + 2.0) / 2.0;
  return 3.0 * std::tgamma(L / 2) * std::tgamma(L / 2) / (16.0 * std::tgamma((L + 4) / 2) * std::tgamma((L + 4) / 2));
}

}  // namespace oracle
