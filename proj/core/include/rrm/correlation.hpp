#pragma once

#include <span>
#include <vector>

#include "rrm/ggm.hpp"
#include "rrm/state.hpp"

namespace rrm {

// T(j_1..j_n) = tr(ρ λ_{j_1} ⊗ ... ⊗ λ_{j_n}), flat storage with party 0 as
// the most significant digit in base d².
class CorrelationTensor {
 public:
  CorrelationTensor(DimSpec dims, std::vector<double> values);

  const DimSpec& dims() const { return dims_; }
  int base() const { return dims_.d * dims_.d; }
  long size() const { return static_cast<long>(values_.size()); }
  const std::vector<double>& values() const { return values_; }

  double at(std::span<const int> idx) const;
  double at(int j, int k) const;  // bipartite
  double flat(long i) const { return values_[i]; }

  // Bipartite only: the full d²×d² array and the L×L real-real block.
  RMatrix matrix() const;
  RMatrix block(int row_begin, int rows, int col_begin, int cols) const;

 private:
  DimSpec dims_;
  std::vector<double> values_;
};

// Accepts any Hermitian operator (unit trace not required).
CorrelationTensor correlation_tensor(const CMatrix& op, const DimSpec& dims, const GGMBasis& basis);
CorrelationTensor correlation_tensor(const DensityMatrix& rho, const GGMBasis& basis);
CorrelationTensor correlation_tensor(const DensityMatrix& rho);

struct Reconstruction {
  CMatrix matrix;
  DimSpec dims;
  double min_eigenvalue = 0.0;
  bool psd = false;

  // Throws ValidationError when the operator is not a state.
  DensityMatrix state() const;
};

Reconstruction reconstruct_state(const CorrelationTensor& t, const GGMBasis& basis);

}  // namespace rrm
