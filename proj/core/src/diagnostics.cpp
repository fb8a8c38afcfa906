#include "rrm/diagnostics.hpp"

#include "rrm/linalg.hpp"

namespace rrm {

MatrixDiagnostics diagnostics(const CMatrix& a, const DimSpec& dims) {
  if (a.rows() != a.cols()) throw ValidationError("diagnostics: matrix is not square");
  if (a.rows() != dims.total()) throw ValidationError("diagnostics: size does not match d^n");
  MatrixDiagnostics out;
  out.singular_values = singular_values(a);
  out.trace_norm = out.singular_values.sum();
  out.hs_norm = hs_norm(a);
  out.is_real = (a - a.transpose()).norm() < tol::pti;
  out.is_hermitian = hermitian_residual(a) <= tol::herm;
  out.min_eigenvalue = hermitian_eigenvalues(a).minCoeff();
  for (int s = 0; s < dims.n; ++s) {
    const CMatrix pt = partial_transpose(a, dims, s);
    out.is_pti_per_site.push_back((a - pt).norm() < tol::pti);
    const double m = hermitian_eigenvalues(pt).minCoeff();
    out.pt_min_eigenvalue.push_back(m);
    out.is_ppt_per_site.push_back(m >= -tol::psd);
  }
  return out;
}

}  // namespace rrm
