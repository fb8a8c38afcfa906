#include "rrm/ggm.hpp"

#include <cmath>
#include <string>

namespace rrm {

GGMBasis ggm_basis(int d) {
  if (d < 2 || d > 64) throw ValidationError("ggm_basis: d must be in [2, 64], got " + std::to_string(d));
  GGMBasis b;
  b.d = d;
  b.L = (d - 1) * (d + 2) / 2;
  b.Lhat = d * (d - 1) / 2;
  b.matrices.reserve(d * d);
  b.matrices.push_back(CMatrix::Identity(d, d));

  const double s = std::sqrt(d / 2.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CMatrix m = CMatrix::Zero(d, d);
      m(j, k) = s;
      m(k, j) = s;
      b.matrices.push_back(m);
    }
  for (int l = 0; l + 1 < d; ++l) {
    CMatrix m = CMatrix::Zero(d, d);
    const double c = std::sqrt(static_cast<double>(d) / ((l + 1.0) * (l + 2.0)));
    for (int j = 0; j <= l; ++j) m(j, j) = c;
    m(l + 1, l + 1) = -c * (l + 1);
    b.matrices.push_back(m);
  }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CMatrix m = CMatrix::Zero(d, d);
      m(j, k) = cplx(0.0, -s);
      m(k, j) = cplx(0.0, s);
      b.matrices.push_back(m);
    }
  return b;
}

}  // namespace rrm
