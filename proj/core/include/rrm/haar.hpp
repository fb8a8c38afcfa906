#pragma once

#include <string>
#include <vector>

#include "rrm/random.hpp"
#include "rrm/types.hpp"

namespace rrm {

enum class MatrixKind { orthogonal, unitary };

struct RandomMatrixSample {
  MatrixKind kind = MatrixKind::orthogonal;
  int d = 0;
  CMatrix matrix;  // imaginary part is exactly zero for orthogonal samples
  SeedPath seed_path;

  RMatrix real() const { return matrix.real(); }
  double residual() const;
};

// QR of a Gaussian matrix with the diagonal of R made positive.
RMatrix haar_orthogonal(int d, Rng& rng);
CMatrix haar_unitary(int d, Rng& rng);

RandomMatrixSample sample_orthogonal(int d, const SeedPath& path);
RandomMatrixSample sample_unitary(int d, const SeedPath& path);

struct SecondMomentCoeffs {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
};

CMatrix swap_operator(int d);
CMatrix pi_operator(int d);  // Σ_jk |jj⟩⟨kk|

// ∫ O^{⊗2} A (O^T)^{⊗2} dO = γ1 I + γ2 S + γ3 Π.
SecondMomentCoeffs orthogonal_second_moment_coeffs(const CMatrix& a2);
CMatrix orthogonal_first_moment(const CMatrix& a);
CMatrix orthogonal_second_moment(const CMatrix& a2);

struct HaarCheck {
  std::string operator_id;
  int order = 1;
  double max_abs_dev = 0.0;
  double std_err = 0.0;  // standard error of the entry with the largest |dev|/SE
  double max_z = 0.0;
  bool pass = false;
};

struct HaarValidationReport {
  int d = 0;
  long n_samples = 0;
  std::uint64_t seed = 0;
  std::vector<HaarCheck> checks;

  bool pass() const;
};

// Monte-Carlo means of O A O^T and O^{⊗2} A (O^T)^{⊗2} over a fixed battery
// of operators, compared entrywise with the exact moments at 3 SE.
HaarValidationReport verify_haar_sampler(int d, long n_samples, std::uint64_t seed, int threads = 1);

}  // namespace rrm
