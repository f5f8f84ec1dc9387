#pragma once

#include <complex>
#include <vector>

#include "oneharm/exact.hpp"

namespace oneharm {

using Complex = std::complex<double>;

// The one-harmonic map w -> w + zeta * w^(1-s) with integer s >= 2 and zeta > 0.
struct MapConfig {
  int s = 2;
  double zeta = 0.0;

  void validate() const;
};

void validate_order(int s);

struct Thresholds {
  int s = 2;
  Rational zeta_c;     // (s-1)^(s-1) / s^s
  Rational zeta_univ;  // 1/(s-1)
  Rational ratio;      // zeta_c / zeta_univ
};

Thresholds thresholds(int s);
double zeta_c(int s);
double zeta_univ(int s);

// Root of U = 1 + zeta x^s U^s on the branch with U(0) = 1, reached radially from the origin.
Complex solve_u(const MapConfig& cfg, Complex x, double tol = 1e-14);
// Same root expressed through t = zeta x^s.
Complex solve_u_of_t(int s, Complex t, double tol = 1e-14);

struct BranchPoint {
  Rational u_c;       // s/(s-1)
  Rational kappa_sq;  // 2s/(s-1)^3
  double kappa = 0.0;
};

BranchPoint branch_point_data(int s);

// |U(t) - (U_c - kappa sqrt(eps))| at t = zeta_c (1 - eps).
double local_expansion_check(int s, double eps);

struct UnivalenceResult {
  bool univalent = false;
  bool critical = false;          // (s-1) zeta == 1 exactly
  Rational critical_value;        // (s-1) zeta as an exact rational
  bool critical_points_agree = false;  // all zeros of f' lie off the open disc iff univalent-or-critical
};

// Decided by exact comparison of (s-1) zeta with 1; the double zeta is read as its exact binary value.
UnivalenceResult is_univalent(const MapConfig& cfg);

std::vector<Complex> boundary_trace(const MapConfig& cfg, const std::vector<double>& angles);

// min over delta = k pi / n_samples, 0 < k < n_samples, of |sin delta| - zeta |sin((s-1) delta)|.
double boundary_injectivity_margin(const MapConfig& cfg, int n_samples);

}  // namespace oneharm
