#pragma once

#include <vector>

#include "rrm/state.hpp"

namespace rrm {

struct MatrixDiagnostics {
  double trace_norm = 0.0;
  double hs_norm = 0.0;
  RVector singular_values;  // descending
  bool is_real = false;
  bool is_hermitian = false;
  double min_eigenvalue = 0.0;  // of the Hermitian part
  std::vector<bool> is_pti_per_site;
  std::vector<bool> is_ppt_per_site;
  std::vector<double> pt_min_eigenvalue;
};

MatrixDiagnostics diagnostics(const CMatrix& a, const DimSpec& dims);
inline MatrixDiagnostics diagnostics(const DensityMatrix& rho) {
  return diagnostics(rho.matrix(), rho.dims());
}

}  // namespace rrm
