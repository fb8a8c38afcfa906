#include "rrm/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rrm/linalg.hpp"

namespace rrm {

DimSpec DimSpec::make(int d, int n) {
  if (d < 2) throw ValidationError("local dimension must be >= 2, got " + std::to_string(d));
  if (n < 1) throw ValidationError("number of parties must be >= 1, got " + std::to_string(n));
  long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= d;
    if (total > kMaxTotalDim)
      throw ValidationError("total dimension d^n exceeds " + std::to_string(kMaxTotalDim));
  }
  return DimSpec{d, n};
}

long DimSpec::total() const { return ipow(d, n); }

StateCheck check_state(const CMatrix& m) {
  StateCheck c;
  c.hermitian_residual = hermitian_residual(m);
  c.trace_residual = std::abs(m.trace() - cplx(1.0));
  c.min_eigenvalue = m.rows() > 0 ? hermitian_eigenvalues(m).minCoeff() : 0.0;
  return c;
}

DensityMatrix::DensityMatrix(const CMatrix& m, DimSpec dims) : dims_(DimSpec::make(dims.d, dims.n)) {
  if (m.rows() != dims_.total() || m.cols() != dims_.total())
    throw ValidationError("density matrix size " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + " does not match d^n = " +
                          std::to_string(dims_.total()));
  const StateCheck c = check_state(m);
  if (!c.hermitian())
    throw ValidationError("matrix is not Hermitian (residual " + std::to_string(c.hermitian_residual) + ")");
  if (!c.unit_trace())
    throw ValidationError("trace differs from 1 by " + std::to_string(c.trace_residual));
  if (!c.psd())
    throw ValidationError("matrix is not positive semidefinite (min eigenvalue " +
                          std::to_string(c.min_eigenvalue) + ")");
  m_ = 0.5 * (m + m.adjoint());
  min_eig_ = c.min_eigenvalue;
}

DensityMatrix DensityMatrix::maximally_mixed(DimSpec dims) {
  const long D = DimSpec::make(dims.d, dims.n).total();
  return DensityMatrix(CMatrix::Identity(D, D) / static_cast<double>(D), dims);
}

DensityMatrix DensityMatrix::pure(const CVector& psi, DimSpec dims) {
  const double nrm = psi.norm();
  if (nrm == 0.0) throw ValidationError("zero state vector");
  const CVector v = psi / nrm;
  return DensityMatrix(v * v.adjoint(), dims);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep) {
  const int nk = static_cast<int>(keep.size());
  CMatrix m = partial_trace(rho.matrix(), rho.dims(), std::move(keep));
  return DensityMatrix(m, DimSpec{rho.d(), nk});
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.d() != b.d()) throw ValidationError("tensor_product: local dimensions differ");
  return DensityMatrix(kron(a.matrix(), b.matrix()), DimSpec{a.d(), a.n() + b.n()});
}

}  // namespace rrm
