#include "oneharm/raney.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "oneharm/error.hpp"
#include "oneharm/maps.hpp"

namespace oneharm {

void validate_raney_args(int s, int p) {
  validate_order(s);
  require(p >= 1, ErrorKind::domain, "p must be >= 1, got " + std::to_string(p));
}

BigInt raney(int s, int p, int n) {
  validate_raney_args(s, p);
  require(n >= 0, ErrorKind::domain, "n must be >= 0");
  const unsigned long top = static_cast<unsigned long>(s) * n + p;
  BigInt r = binomial(top, static_cast<unsigned long>(n)) * p;
  mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), top);
  return r;
}

Rational raney_ratio(int s, int p, int n) {
  validate_raney_args(s, p);
  BigInt num = 1, den = n + 1;
  for (int k = 0; k < s; ++k) num *= BigInt(s) * n + p + k;
  for (int l = 1; l < s; ++l) den *= BigInt(s - 1) * n + p + l;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::vector<BigInt> raney_table(int s, int p, int n_max) {
  validate_raney_args(s, p);
  require(n_max >= 0, ErrorKind::domain, "n_max must be >= 0");
  std::vector<BigInt> t(n_max + 1);
  t[0] = 1;
  for (int n = 0; n < n_max; ++n) {
    BigInt num = t[n], den = n + 1;
    for (int k = 0; k < s; ++k) num *= BigInt(s) * n + p + k;
    for (int l = 1; l < s; ++l) den *= BigInt(s - 1) * n + p + l;
    mpz_divexact(t[n + 1].get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
  return t;
}

namespace {

using Poly = std::vector<BigInt>;

Poly multiply_truncated(const Poly& a, const Poly& b, int n_max) {
  Poly c(n_max + 1, BigInt(0));
  for (int i = 0; i <= n_max && i < static_cast<int>(a.size()); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; i + j <= n_max && j < static_cast<int>(b.size()); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

}  // namespace

std::vector<std::vector<BigInt>> raney_series_powers(int s, int p_max, int n_max) {
  validate_raney_args(s, p_max);
  // Fixed point of U = 1 + t U^s: iteration k fixes the coefficient of t^k.
  Poly u(n_max + 1, BigInt(0));
  u[0] = 1;
  for (int it = 0; it < n_max; ++it) {
    Poly us = u;
    for (int k = 1; k < s; ++k) us = multiply_truncated(us, u, n_max);
    Poly next(n_max + 1, BigInt(0));
    next[0] = 1;
    for (int n = 1; n <= n_max; ++n) next[n] = us[n - 1];
    u = std::move(next);
  }
  std::vector<Poly> powers;
  powers.push_back(u);
  for (int p = 2; p <= p_max; ++p) powers.push_back(multiply_truncated(powers.back(), u, n_max));
  return powers;
}

std::vector<BigInt> raney_series_oracle(int s, int p, int n_max) {
  return raney_series_powers(s, p, n_max).back();
}

ConvolutionCheck convolution_check(int s, const std::vector<int>& parts, int m) {
  validate_order(s);
  require(!parts.empty(), ErrorKind::domain, "convolution needs at least one part");
  require(m >= 0, ErrorKind::domain, "m must be >= 0");
  int total = 0;
  std::vector<std::vector<BigInt>> tables;
  for (int p : parts) {
    validate_raney_args(s, p);
    total += p;
    tables.push_back(raney_table(s, p, m));
  }
  // acc[n] = coefficient of t^n in the product of the first i series.
  std::vector<BigInt> acc = tables[0];
  for (std::size_t i = 1; i < tables.size(); ++i) acc = multiply_truncated(acc, tables[i], m);
  ConvolutionCheck c;
  c.lhs = acc[m];
  c.rhs = raney(s, total, m);
  c.holds = c.lhs == c.rhs;
  return c;
}

AsymptoticData asymptotic_data(int s, int p) {
  validate_raney_args(s, p);
  const double ms = static_cast<double>(s) / (s - 1);
  AsymptoticData a;
  a.amplitude = p * std::pow(ms, p) / std::sqrt(2.0 * std::numbers::pi * s * (s - 1));
  a.growth = 1.0 / zeta_c(s);
  return a;
}

double asymptotic_value(int s, int p, int m) {
  require(m >= 1, ErrorKind::domain, "m must be >= 1");
  const auto a = asymptotic_data(s, p);
  return a.amplitude * std::exp(m * std::log(a.growth)) * std::pow(m, -1.5);
}

namespace {

double log_zeta_c(int s) { return (s - 1) * std::log(s - 1.0) - s * std::log(static_cast<double>(s)); }

// log of R / (p M^p zeta_c^-m m^-3/2)
double log_normalized(const BigInt& r, int s, int p, int m) {
  const double lm = std::log(static_cast<double>(s) / (s - 1));
  return log_abs(r) - std::log(static_cast<double>(p)) - p * lm + m * log_zeta_c(s) + 1.5 * std::log(m);
}

}  // namespace

double asymptotic_ratio(int s, int p, int m) {
  require(m >= 1, ErrorKind::domain, "m must be >= 1");
  const auto a = asymptotic_data(s, p);
  const double lm = std::log(static_cast<double>(s) / (s - 1));
  const double log_a_over_pmp = std::log(a.amplitude) - std::log(static_cast<double>(p)) - p * lm;
  return std::exp(log_normalized(raney(s, p, m), s, p, m) - log_a_over_pmp);
}

double uniform_bound_constant(int s) {
  validate_order(s);
  static std::mutex mu;
  static std::map<int, double> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(s); it != cache.end()) return it->second;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (int p = 1; p <= 200; ++p) {
    const auto t = raney_table(s, p, 200);
    for (int m = 1; m <= 200; ++m) best = std::max(best, log_normalized(t[m], s, p, m));
  }
  const double c = 2.0 * std::exp(best);
  std::lock_guard lock(mu);
  cache[s] = c;
  return c;
}

double uniform_bound(int s, int p, int m) {
  validate_raney_args(s, p);
  require(m >= 1, ErrorKind::domain, "m must be >= 1");
  const double lm = std::log(static_cast<double>(s) / (s - 1));
  return uniform_bound_constant(s) * std::exp(std::log(static_cast<double>(p)) + p * lm - m * log_zeta_c(s) - 1.5 * std::log(m));
}

}  // namespace oneharm
