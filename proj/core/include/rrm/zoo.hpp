#pragma once

#include <map>
#include <string>
#include <vector>

#include "rrm/random.hpp"
#include "rrm/state.hpp"

namespace rrm {

struct StateSpec {
  std::string name;
  std::map<std::string, double> params;
};

// Catalog: max_entangled(d), maximally_mixed(d, n), isotropic(d, p), rho0,
// rho_u(u), noisy_ghz(n, p), ghz(n), table1(k), upb_tiles, chessboard(a, b,
// c, d, m, n), piani, overlap_family(p), bell(k).
DensityMatrix named_state(const StateSpec& spec);
std::vector<std::string> catalog();

// Σ p_{αβ} |φ^{αβ}⟩⟨φ^{αβ}|, |φ^{αβ}⟩ = (Z^α ⊗ X^β)|φ^{00}⟩.
DensityMatrix bell_diagonal(const RMatrix& p);
RMatrix bell_probabilities(int k);  // the four 3×3 tables P1..P4

enum class RandomStateKind { pure_haar, mixed_hs, product, real_random };
DensityMatrix random_state(RandomStateKind kind, const DimSpec& dims, Rng& rng);

struct ChessboardParams {
  double a = 1.0, b = 1.0, c = 1.0, d = 1.0, m = 1.0, n = 1.0;
};

// Normalized Σ|V_i⟩⟨V_i|; no validation.
CMatrix chessboard_matrix(const ChessboardParams& p);

struct ChessboardSelection {
  ChessboardParams params;
  bool from_sweep = false;
  long candidates_tried = 0;
};

// Default parameters if they pass PPT, PTI and detection; otherwise the first
// detected instance of the positive grid {0.5, 1, 1.5}^6, then of the signed
// grid {±0.5, ±1, ±1.5}^6.
ChessboardSelection validated_chessboard_params();

// ρ0 = (I + 2λ1⊗λ1 + λ1⊗λ3 + λ3⊗λ3 + λ4⊗λ4 + 2λ6⊗λ6)/9 under the real-first
// index order and under the historical Gell-Mann order, each with its
// smallest eigenvalue.
struct Rho0Candidate {
  std::string convention;
  CMatrix matrix;
  double min_eigenvalue = 0.0;
};
std::vector<Rho0Candidate> rho0_candidates();

CVector ghz_vector(int n, int sign);  // (|0..0⟩ ± |1..1⟩)/√2
CVector max_entangled_vector(int d);

}  // namespace rrm
