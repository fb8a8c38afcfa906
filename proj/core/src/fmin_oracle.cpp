// Brute-force minimiser for the fourth-moment bound. Kept free of the
// closed-form branch logic so the two can check each other.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "rrm/entanglement.hpp"
#include "rrm/random.hpp"

namespace rrm {

namespace {

struct Problem {
  int L = 0;
  double s = 0.0;    // Στ²
  double c = 0.0;    // bound on Στ
  double box = 0.0;  // τ_j <= box
};

double quartic(const std::vector<double>& t) {
  double acc = 0.0;
  for (double v : t) acc += v * v * v * v;
  return acc;
}

// Candidates with q entries at the box, k entries equal to a, m entries equal
// to b and the rest zero. Stationary points of the constrained problem have
// at most two distinct interior values, so the optimum is among these.
double enumerate(const Problem& p) {
  const double eps = 1e-12 * std::max(1.0, p.s);
  const double B = p.box;
  double best = std::numeric_limits<double>::infinity();
  for (int q = 0; q <= p.L; ++q) {
    const double s1 = p.s - q * B * B;
    const double c1 = p.c - q * B;
    if (s1 < -eps || c1 < -eps) break;
    if (s1 <= eps) {
      best = std::min(best, q * std::pow(B, 4));
      continue;
    }
    for (int k = 1; k + q <= p.L; ++k) {
      const double a = std::sqrt(s1 / k);
      if (a <= B + 1e-12 && k * a <= c1 + 1e-12) best = std::min(best, q * std::pow(B, 4) + k * std::pow(a, 4));
      for (int m = 1; k + m + q <= p.L; ++m) {
        double disc = static_cast<double>(k) * m * ((m + k) * s1 - c1 * c1);
        if (disc < -eps) continue;
        disc = std::sqrt(std::max(0.0, disc));
        for (double sign : {-1.0, 1.0}) {
          const double av = (k * c1 + sign * disc) / (k * (m + static_cast<double>(k)));
          const double bv = (c1 - k * av) / m;
          if (av < -1e-12 || bv < -1e-12 || av > B + 1e-12 || bv > B + 1e-12) continue;
          best = std::min(best, q * std::pow(B, 4) + k * std::pow(av, 4) + m * std::pow(bv, 4));
        }
      }
    }
  }
  return best;
}

// Feasible angles θ for (τ_i, τ_j) = r(cos θ, sin θ) given the budget S for
// τ_i + τ_j and the box. Returns up to two intervals.
std::vector<std::pair<double, double>> pair_intervals(double r, double S, double B) {
  const double lo = std::acos(std::min(1.0, B / r));
  const double hi = std::asin(std::min(1.0, B / r));
  std::vector<std::pair<double, double>> out;
  if (S >= std::numbers::sqrt2 * r) {
    if (lo <= hi) out.emplace_back(lo, hi);
    return out;
  }
  if (S < r) return out;
  const double phi = std::asin(S / (std::numbers::sqrt2 * r)) - std::numbers::pi / 4.0;
  if (lo <= std::min(hi, phi)) out.emplace_back(lo, std::min(hi, phi));
  if (std::max(lo, std::numbers::pi / 2.0 - phi) <= hi) out.emplace_back(std::max(lo, std::numbers::pi / 2.0 - phi), hi);
  return out;
}

bool pair_move(std::vector<double>& t, int i, int j, double sum, const Problem& p, Rng* rng) {
  const double r = std::hypot(t[i], t[j]);
  if (r <= 0.0) return false;
  const double budget = p.c - (sum - t[i] - t[j]);
  const auto iv = pair_intervals(r, budget + 1e-13, p.box);
  if (iv.empty()) return false;
  double theta;
  if (rng) {
    std::uniform_int_distribution<std::size_t> pick(0, iv.size() - 1);
    const auto& [a, b] = iv[pick(*rng)];
    theta = std::uniform_real_distribution<double>(a, b)(*rng);
  } else {
    // cos⁴ + sin⁴ decreases towards π/4: take the feasible angle closest to it.
    theta = iv.front().second;
    const double quarter = std::numbers::pi / 4.0;
    for (const auto& [a, b] : iv) {
      const double cand = std::clamp(quarter, a, b);
      if (std::abs(cand - quarter) < std::abs(theta - quarter)) theta = cand;
    }
    const double before = std::pow(t[i], 4) + std::pow(t[j], 4);
    const double after = std::pow(r * std::cos(theta), 4) + std::pow(r * std::sin(theta), 4);
    if (after >= before - 1e-15 * std::max(1.0, before)) return false;
  }
  t[i] = r * std::cos(theta);
  t[j] = r * std::sin(theta);
  return true;
}

// Moves (τ_i, τ_j, τ_k) along the circle that fixes both their sum and their
// sum of squares.
bool triple_move(std::vector<double>& t, int i, int j, int k, const Problem& p) {
  const double sig = t[i] + t[j] + t[k];
  const double q = t[i] * t[i] + t[j] * t[j] + t[k] * t[k];
  const double rho2 = q - sig * sig / 3.0;
  if (rho2 <= 1e-14 * std::max(1.0, q)) return false;
  const double rho = std::sqrt(rho2);
  const double m = sig / 3.0;
  const double u1[3] = {1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2, 0.0};
  const double u2[3] = {1.0 / std::sqrt(6.0), 1.0 / std::sqrt(6.0), -2.0 / std::sqrt(6.0)};
  auto point = [&](double phi, double out[3]) {
    for (int a = 0; a < 3; ++a) out[a] = m + rho * (std::cos(phi) * u1[a] + std::sin(phi) * u2[a]);
  };
  auto value = [&](double phi) {
    double v[3];
    point(phi, v);
    double acc = 0.0;
    for (double x : v) {
      if (x < -1e-13 || x > p.box + 1e-13) return std::numeric_limits<double>::infinity();
      acc += x * x * x * x;
    }
    return acc;
  };
  const double before = std::pow(t[i], 4) + std::pow(t[j], 4) + std::pow(t[k], 4);
  constexpr int kGrid = 36;
  const double step = 2.0 * std::numbers::pi / kGrid;
  double best_phi = 0.0, best_val = std::numeric_limits<double>::infinity();
  for (int g = 0; g < kGrid; ++g) {
    const double v = value(g * step);
    if (v < best_val) {
      best_val = v;
      best_phi = g * step;
    }
  }
  if (!std::isfinite(best_val)) return false;
  // Golden-section refinement around the best grid point.
  double a = best_phi - step, b = best_phi + step;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = value(x1), f2 = value(x2);
  for (int it = 0; it < 40; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = value(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = value(x2);
    }
  }
  double phi = best_phi;
  double val = best_val;
  if (std::min(f1, f2) < val) {
    phi = f1 < f2 ? x1 : x2;
    val = std::min(f1, f2);
  }
  if (val >= before - 1e-15 * std::max(1.0, before)) return false;
  double v[3];
  point(phi, v);
  t[i] = std::max(0.0, v[0]);
  t[j] = std::max(0.0, v[1]);
  t[k] = std::max(0.0, v[2]);
  return true;
}

double total(const std::vector<double>& t) {
  double s = 0.0;
  for (double v : t) s += v;
  return s;
}

double descend(std::vector<double> t, const Problem& p) {
  const int L = p.L;
  for (int sweep = 0; sweep < 200; ++sweep) {
    bool moved = false;
    for (int i = 0; i < L; ++i)
      for (int j = i + 1; j < L; ++j) moved |= pair_move(t, i, j, total(t), p, nullptr);
    for (int i = 0; i < L; ++i)
      for (int j = i + 1; j < L; ++j)
        for (int k = j + 1; k < L; ++k) moved |= triple_move(t, i, j, k, p);
    if (!moved) break;
  }
  return quartic(t);
}

}  // namespace

double f_min_oracle(int x, double y, int d, int starts, std::uint64_t seed) {
  if (d < 2 || d > 7) throw ValidationError("f_min_oracle: d must be in [2, 7]");
  if (x < 1 || x > d) throw ValidationError("f_min_oracle: x must be in [1, d]");
  if (!(y >= 0.0)) throw ValidationError("f_min_oracle: y must be >= 0");
  Problem p;
  p.L = (d - 1) * (d + 2) / 2;
  p.s = static_cast<double>(p.L) * p.L * y;
  p.c = d * x - 1.0;
  p.box = d - 1.0;
  const double L = p.L;
  const double W = 3.0 / (L * L * (L + 2.0) * (L + 2.0));
  const double tail = W * L * L * L * L * y * y;

  // Most concentrated feasible vector: as many entries at the box as fit.
  const double B = p.box;
  const int full = static_cast<int>(std::floor(p.s / (B * B) + 1e-12));
  if (full > p.L || (full == p.L && p.s - full * B * B > 1e-12))
    throw ValidationError("f_min_oracle: no τ in the box has the requested second moment");
  std::vector<double> start(p.L, 0.0);
  for (int i = 0; i < full && i < p.L; ++i) start[i] = B;
  if (full < p.L) start[full] = std::sqrt(std::max(0.0, p.s - full * B * B));
  if (total(start) > p.c + 1e-9 * std::max(1.0, p.c))
    throw ValidationError("f_min_oracle: constraint set is empty (y above the reachable range)");
  if (p.s == 0.0) return 0.0;

  double best = enumerate(p);

  Rng rng = make_rng({seed, static_cast<std::uint64_t>(x * 1000 + d)});
  for (int sidx = 0; sidx < starts; ++sidx) {
    std::vector<double> t = start;
    std::shuffle(t.begin(), t.end(), rng);
    std::uniform_int_distribution<int> idx(0, p.L - 1);
    for (int step = 0; step < 4 * p.L; ++step) {
      const int i = idx(rng);
      const int j = idx(rng);
      if (i != j) pair_move(t, i, j, total(t), p, &rng);
    }
    best = std::min(best, descend(t, p));
  }
  return W * 2.0 * best + tail;
}

}  // namespace rrm
