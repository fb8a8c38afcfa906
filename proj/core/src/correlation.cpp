#include "rrm/correlation.hpp"

#include <cmath>
#include <string>

#include "rrm/linalg.hpp"

namespace rrm {

CorrelationTensor::CorrelationTensor(DimSpec dims, std::vector<double> values)
    : dims_(dims), values_(std::move(values)) {
  if (static_cast<long>(values_.size()) != ipow(base(), dims_.n))
    throw ValidationError("correlation tensor size does not match (d²)^n");
}

double CorrelationTensor::at(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != dims_.n) throw ValidationError("tensor index arity mismatch");
  long flat = 0;
  for (int j : idx) {
    if (j < 0 || j >= base()) throw ValidationError("tensor index out of range");
    flat = flat * base() + j;
  }
  return values_[flat];
}

double CorrelationTensor::at(int j, int k) const {
  const int idx[2] = {j, k};
  return at(std::span<const int>(idx, 2));
}

RMatrix CorrelationTensor::matrix() const {
  if (dims_.n != 2) throw ValidationError("matrix view needs a bipartite tensor");
  const int b = base();
  RMatrix m(b, b);
  for (int j = 0; j < b; ++j)
    for (int k = 0; k < b; ++k) m(j, k) = values_[j * b + k];
  return m;
}

RMatrix CorrelationTensor::block(int row_begin, int rows, int col_begin, int cols) const {
  return matrix().block(row_begin, col_begin, rows, cols);
}

namespace {

// Recursively contracts party 0 with each basis element.
void contract(const CMatrix& x, const GGMBasis& basis, int remaining, long prefix,
              std::vector<cplx>& out) {
  const int b = basis.size();
  for (int j = 0; j < b; ++j) {
    CMatrix y = contract_first(x, basis[j]);
    if (remaining == 1) {
      out[prefix * b + j] = y(0, 0);
    } else {
      contract(y, basis, remaining - 1, prefix * b + j, out);
    }
  }
}

CMatrix expand(const std::vector<double>& t, const GGMBasis& basis, int n, long offset, long stride) {
  // Σ_j λ_j ⊗ R_j, R_j the expansion of the sub-tensor with leading index j.
  const int b = basis.size();
  const int d = basis.d;
  if (n == 1) {
    CMatrix out = CMatrix::Zero(d, d);
    for (int j = 0; j < b; ++j)
      if (t[offset + j] != 0.0) out += t[offset + j] * basis[j];
    return out;
  }
  const long sub = stride / b;
  const long dim_rest = ipow(d, n - 1);
  CMatrix out = CMatrix::Zero(d * dim_rest, d * dim_rest);
  for (int j = 0; j < b; ++j) {
    CMatrix r = expand(t, basis, n - 1, offset + j * sub, sub);
    if (r.isZero(0.0)) continue;
    out += kron(basis[j], r);
  }
  return out;
}

}  // namespace

CorrelationTensor correlation_tensor(const CMatrix& op, const DimSpec& dims, const GGMBasis& basis) {
  if (basis.d != dims.d) throw ValidationError("correlation_tensor: basis dimension mismatch");
  if (op.rows() != dims.total() || op.cols() != dims.total())
    throw ValidationError("correlation_tensor: operator size mismatch");
  if (hermitian_residual(op) > tol::herm)
    throw ValidationError("correlation_tensor: operator is not Hermitian");
  const long size = ipow(basis.size(), dims.n);
  std::vector<cplx> raw(size);
  contract(op, basis, dims.n, 0, raw);
  std::vector<double> values(size);
  for (long i = 0; i < size; ++i) {
    if (std::abs(raw[i].imag()) > tol::herm)
      throw ValidationError("correlation_tensor: imaginary residue " + std::to_string(raw[i].imag()));
    values[i] = raw[i].real();
  }
  return CorrelationTensor(dims, std::move(values));
}

CorrelationTensor correlation_tensor(const DensityMatrix& rho, const GGMBasis& basis) {
  return correlation_tensor(rho.matrix(), rho.dims(), basis);
}

CorrelationTensor correlation_tensor(const DensityMatrix& rho) {
  return correlation_tensor(rho, ggm_basis(rho.d()));
}

DensityMatrix Reconstruction::state() const {
  if (!psd)
    throw ValidationError("reconstructed operator is not positive semidefinite (min eigenvalue " +
                          std::to_string(min_eigenvalue) + ")");
  return DensityMatrix(matrix, dims);
}

Reconstruction reconstruct_state(const CorrelationTensor& t, const GGMBasis& basis) {
  const DimSpec& dims = t.dims();
  if (basis.d != dims.d) throw ValidationError("reconstruct_state: basis dimension mismatch");
  if (std::abs(t.flat(0) - 1.0) > tol::trace)
    throw ValidationError("reconstruct_state: T(0..0) must equal 1");
  Reconstruction r;
  r.dims = dims;
  r.matrix = expand(t.values(), basis, dims.n, 0, t.size()) / static_cast<double>(dims.total());
  r.min_eigenvalue = hermitian_eigenvalues(r.matrix).minCoeff();
  r.psd = r.min_eigenvalue >= -tol::psd;
  return r;
}

}  // namespace rrm
