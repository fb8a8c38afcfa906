#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rrm/correlation.hpp"
#include "rrm/random.hpp"

namespace rrm {

enum class Protocol { RM, RRM, PRRM };

std::string to_string(Protocol p);
Protocol protocol_from_string(const std::string& s);

struct MomentConstants {
  int d = 0;
  int L = 0;
  int Lhat = 0;
  double V1 = 0.0;  // 1/L²
  double W = 0.0;   // 3/(L²(L+2)²)
};

MomentConstants moment_constants(int d);

enum class ObservableKind { real, imaginary };

struct Observable {
  int d = 0;
  CMatrix matrix;
  ObservableKind kind = ObservableKind::real;
  double scale = 1.0;  // factor applied to the tabulated diagonal
};

// Tabulated diagonal observables for d = 2..7 (rescaled so tr M² = d) and the
// antisymmetric √(d/2)(-i|0⟩⟨d-1| + i|d-1⟩⟨0|).
std::pair<Observable, Observable> default_observables(int d);

struct SectorMoments {
  double R2 = 0.0;
  double Q2 = 0.0;
  double Qhat2 = 0.0;
  int n_parties = 0;
  int d = 0;
};

SectorMoments exact_sector_moments(const CorrelationTensor& t);

// W[2Στ⁴ + (Στ²)²] with τ the singular values of the real-real block.
double exact_fourth_moment(const CorrelationTensor& t);

// Same quantities evaluated entrywise from T without a decomposition.
double sphere_moment(const CorrelationTensor& t, int order);

// Closed-form Haar moment for a protocol: RM/RRM/PRRM at t = 2, RRM at t = 4
// for two parties.
double exact_moment(const DensityMatrix& rho, Protocol kind, int t);

// tr(ρ ⊗_j U_j M_j U_j^†). With n_shots > 0 the value is a shot average.
double expectation_value(const DensityMatrix& rho, const std::vector<CMatrix>& settings,
                         const std::vector<CMatrix>& observables, long n_shots, Rng& rng);

struct MomentEstimate {
  double value = 0.0;
  double std_err = 0.0;
  int t = 0;
  long n_settings = 0;
  long n_shots = 0;
  Protocol kind = Protocol::RRM;
  std::uint64_t seed = 0;
};

MomentEstimate estimate_moment_mc(const DensityMatrix& rho, Protocol kind, int t, long n_settings,
                                  long n_shots, std::uint64_t seed, int threads = 1);

}  // namespace rrm
