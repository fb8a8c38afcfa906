#pragma once

#include <vector>

#include "rrm/types.hpp"

namespace rrm {

inline constexpr long kMaxTotalDim = 4096;

struct DimSpec {
  int d = 2;
  int n = 1;

  // Throws ValidationError unless d >= 2, n >= 1 and d^n <= kMaxTotalDim.
  static DimSpec make(int d, int n);

  long total() const;
  bool operator==(const DimSpec&) const = default;
};

struct StateCheck {
  double hermitian_residual = 0.0;
  double trace_residual = 0.0;
  double min_eigenvalue = 0.0;

  bool hermitian() const { return hermitian_residual <= tol::herm; }
  bool unit_trace() const { return trace_residual <= tol::trace; }
  bool psd() const { return min_eigenvalue >= -tol::psd; }
  bool ok() const { return hermitian() && unit_trace() && psd(); }
};

StateCheck check_state(const CMatrix& m);

class DensityMatrix {
 public:
  // Validates all invariants; the stored matrix is the Hermitian part of m.
  DensityMatrix(const CMatrix& m, DimSpec dims);

  const CMatrix& matrix() const { return m_; }
  const DimSpec& dims() const { return dims_; }
  int d() const { return dims_.d; }
  int n() const { return dims_.n; }
  long dim() const { return dims_.total(); }
  double min_eigenvalue() const { return min_eig_; }

  static DensityMatrix maximally_mixed(DimSpec dims);
  static DensityMatrix pure(const CVector& psi, DimSpec dims);

 private:
  CMatrix m_;
  DimSpec dims_;
  double min_eig_ = 0.0;
};

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace rrm
