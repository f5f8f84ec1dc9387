#pragma once

#include <vector>

#include "oneharm/exact.hpp"

namespace oneharm {

void validate_raney_args(int s, int p);

// p/(sn+p) * binom(sn+p, n), exact.
BigInt raney(int s, int p, int n);

// R(0..n_max) by the exact ratio recurrence.
std::vector<BigInt> raney_table(int s, int p, int n_max);

// R(n+1)/R(n) as an exact rational.
Rational raney_ratio(int s, int p, int n);

// R(n+1) zeta_c / R(n), computed factor by factor so every factor stays near 1.
inline long double scaled_raney_ratio(int s, int p, long double n) {
  const long double sm = s * n + p;
  const long double sm1 = (s - 1) * n + p;
  long double r = 1.0L / (n + 1.0L);
  for (int k = 0; k < s; ++k) r *= (sm + k) / s;
  for (int l = 1; l < s; ++l) r /= (sm1 + l) / (s - 1);
  return r;
}

// Raney numbers are the coefficients of U^p where U = 1 + t U^s: checked by truncated power-series
// composition over the integers, independent of the closed form.
std::vector<BigInt> raney_series_oracle(int s, int p, int n_max);
// Coefficients of U^1..U^p_max truncated at degree n_max; element [p-1] holds U^p.
std::vector<std::vector<BigInt>> raney_series_powers(int s, int p_max, int n_max);

struct ConvolutionCheck {
  BigInt lhs;  // sum over compositions of prod R_{p_i}(n_i)
  BigInt rhs;  // R_{sum p_i}(m)
  bool holds = false;
};

ConvolutionCheck convolution_check(int s, const std::vector<int>& parts, int m);

struct AsymptoticData {
  double amplitude = 0.0;  // p M^p / sqrt(2 pi s (s-1)), M = s/(s-1)
  double growth = 0.0;     // 1/zeta_c
  double exponent = -1.5;
};

AsymptoticData asymptotic_data(int s, int p);
double asymptotic_value(int s, int p, int m);

// R(m) zeta_c^m m^(3/2) / A, evaluated in log space.
double asymptotic_ratio(int s, int p, int m);

// 2 x sup over 1 <= p, m <= 200 of R(m) / (p M^p zeta_c^-m m^-3/2); memoized per s.
double uniform_bound_constant(int s);
double uniform_bound(int s, int p, int m);

}  // namespace oneharm
