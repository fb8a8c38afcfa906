#pragma once

#include <vector>

#include "rrm/types.hpp"

namespace rrm {

enum class Sector { identity, real, imaginary };

// Generalized Gell-Mann matrices with tr(λ_j λ_k) = d δ_jk. Index 0 is the
// identity, 1..L the real ones (symmetric pairs, then diagonals) and
// L+1..d²-1 the antisymmetric ones.
struct GGMBasis {
  int d = 0;
  int L = 0;
  int Lhat = 0;
  std::vector<CMatrix> matrices;

  int size() const { return d * d; }
  Sector sector(int j) const {
    if (j == 0) return Sector::identity;
    return j <= L ? Sector::real : Sector::imaginary;
  }
  const CMatrix& operator[](int j) const { return matrices[j]; }
};

GGMBasis ggm_basis(int d);

}  // namespace rrm
