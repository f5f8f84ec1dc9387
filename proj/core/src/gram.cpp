#include "oneharm/gram.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oneharm/error.hpp"
#include "oneharm/maps.hpp"
#include "oneharm/raney.hpp"

namespace oneharm {

namespace {

long double zeta_c_ld(int s) {
  return std::pow(static_cast<long double>(s - 1), s - 1) / std::pow(static_cast<long double>(s), s);
}

void require_subcritical(int s, double zeta) {
  require(std::isfinite(zeta) && zeta > 0.0, ErrorKind::domain, "zeta must be positive");
  if (cmp(exact_rational(zeta), thresholds(s).zeta_c) >= 0)
    fail(ErrorKind::divergence, "the Gram series diverges for zeta >= zeta_c");
}

constexpr long max_terms = 400000000L;

// Geometric tail bound of a series whose term ratios stay below eta2 from here on.
bool tail_small(long double term, long double eta2, long double sum, double tol) {
  return term * eta2 / (1.0L - eta2) < tol * sum;
}

}  // namespace

GramVector gram_vector(int s, int p, double zeta, int m_max) {
  validate_raney_args(s, p);
  require(zeta > 0.0 && m_max >= 0, ErrorKind::domain, "gram_vector needs zeta > 0 and m_max >= 0");
  GramVector g{s, p, zeta, {}};
  g.entries.resize(m_max + 1);
  const long double eta = zeta / zeta_c_ld(s);
  long double a = 1.0L;  // R(m) zeta^m
  const long double rp = std::sqrt(static_cast<long double>(p));
  for (int m = 0; m <= m_max; ++m) {
    g.entries[m] = static_cast<double>((p + static_cast<long double>(m) * s) / rp * a);
    a *= scaled_raney_ratio(s, p, m) * eta;
  }
  return g;
}

double sigma_p(int s, int p, double zeta, double tol) {
  validate_raney_args(s, p);
  require(tol > 0.0, ErrorKind::domain, "tol must be positive");
  require_subcritical(s, zeta);
  const long double eta = zeta / zeta_c_ld(s), eta2 = eta * eta;
  // Terms until eta^(2m) drops below tol (1 - eta^2), which the tail test needs.
  const long double needed = std::log(1.0L / (tol * (1.0L - eta2))) / -std::log(eta2);
  if (!(needed < max_terms)) fail(ErrorKind::iteration, "sigma_p: too many terms this close to zeta_c");
  long double a = 1.0L, sum = 0.0L;
  for (long m = 0;; ++m) {
    const long double k = p + static_cast<long double>(m) * s;
    const long double term = k * k / p * a * a;
    sum += term;
    const long double r = scaled_raney_ratio(s, p, m);
    const long double amp = (k + s) / k * r;  // term ratio is (amp eta)^2
    if (amp <= 1.0L && tail_small(term, eta2, sum, tol)) break;
    if (m > max_terms) fail(ErrorKind::iteration, "sigma_p: too many terms");
    a *= r * eta;
  }
  return static_cast<double>(sum);
}

double hessian_entry(int s, double zeta, int m, int n) {
  validate_order(s);
  require(m >= 1 && n >= 1, ErrorKind::domain, "hessian indices start at 1");
  require(zeta > 0.0 && zeta < zeta_univ(s), ErrorKind::domain, "hessian_entry needs 0 < zeta < zeta_univ");
  if ((m - n) % s != 0) return 0.0;
  double sum = 0.0;
  for (int p = (m - 1) % s + 1; p <= std::min(m, n); p += s) {
    const int k = (m - p) / s, l = (n - p) / s;
    sum += raney(s, p, k).get_d() * raney(s, p, l).get_d() * std::pow(zeta, k + l) / p;
  }
  return static_cast<double>(m) * n * sum;
}

bool gram_consistency(int s, double zeta, int m, int n, int p_max, double rel_tol) {
  const double h = hessian_entry(s, zeta, m, n);
  double g = 0.0;
  if ((m - n) % s == 0) {
    for (int p = (m - 1) % s + 1; p <= std::min({m, n, p_max}); p += s) {
      const auto v = gram_vector(s, p, zeta, (std::max(m, n) - p) / s);
      g += v.entries[(m - p) / s] * v.entries[(n - p) / s];
    }
  }
  if (h == 0.0 && g == 0.0) return true;
  return std::fabs(g - h) <= rel_tol * std::max(std::fabs(g), std::fabs(h));
}

double block_index(int s, int q, int j) { return q + static_cast<double>(j) * s; }

double block_weight(int s, int q, double beta, int j) {
  const double p = block_index(s, q, j);
  return std::pow(p, 1.5 + beta) * std::pow(static_cast<double>(s) / (s - 1), p);
}

namespace {

void validate_block(int s, int q, double beta) {
  validate_order(s);
  require(q >= 1 && q <= s, ErrorKind::domain, "sector q must lie in [1, s]");
  require(beta > 0.0 && std::isfinite(beta), ErrorKind::domain, "beta must be positive");
}

}  // namespace

double block_entry(int s, double zeta, int q, double beta, int j1, int j2, double tol) {
  validate_block(s, q, beta);
  require(j1 >= 0 && j2 >= 0, ErrorKind::domain, "block indices start at 0");
  require(tol > 0.0, ErrorKind::domain, "tol must be positive");
  require_subcritical(s, zeta);
  const int lo = std::min(j1, j2), hi = std::max(j1, j2), delta = hi - lo;
  const int p1 = q + lo * s, p2 = q + hi * s;
  const long double eta = zeta / zeta_c_ld(s), eta2 = eta * eta;
  // a1 = R_{p1}(m + delta) zeta^(m + delta), a2 = R_{p2}(m) zeta^m.
  long double a1 = 1.0L;
  for (int m = 0; m < delta; ++m) a1 *= scaled_raney_ratio(s, p1, m) * eta;
  long double a2 = 1.0L, sum = 0.0L;
  const long double norm = std::sqrt(static_cast<long double>(p1) * p2);
  for (long m = 0;; ++m) {
    const long double k = p2 + static_cast<long double>(m) * s;
    const long double term = k * k / norm * a1 * a2;
    sum += term;
    const long double r1 = scaled_raney_ratio(s, p1, m + delta), r2 = scaled_raney_ratio(s, p2, m);
    const long double amp2 = (k + s) * (k + s) / (k * k) * r1 * r2;
    if (amp2 <= 1.0L && tail_small(term, eta2, sum, tol)) break;
    if (m > max_terms) fail(ErrorKind::iteration, "block_entry: too many terms");
    a1 *= r1 * eta;
    a2 *= r2 * eta;
  }
  return static_cast<double>(sum / (static_cast<long double>(block_weight(s, q, beta, lo)) * block_weight(s, q, beta, hi)));
}

WeightedBlock weighted_block(int s, double zeta, int q, double beta, int n, double tol) {
  validate_block(s, q, beta);
  require(n >= 2, ErrorKind::domain, "block truncation N must be >= 2");
  require(tol > 0.0, ErrorKind::domain, "tol must be positive");
  require_subcritical(s, zeta);
  WeightedBlock wb;
  wb.s = s;
  wb.q = q;
  wb.beta = beta;
  wb.zeta = zeta;
  wb.matrix = SymMatrix(n);
  for (int j = 0; j < n; ++j) wb.weights.push_back(block_weight(s, q, beta, j));

  const long double eta = zeta / zeta_c_ld(s), eta2 = eta * eta;
  const long double sm1 = s - 1;
  // Column j at row t (index k = q + s t) equals k * g[j], with g[j] = R_{p_j}(t-j) zeta^(t-j) / (w_j sqrt p_j).
  std::vector<long double> g(n, 0.0L);
  std::vector<double> v(n, 0.0);
  std::vector<long double> total(static_cast<std::size_t>(n) * n, 0.0L);
  std::vector<double> chunk(static_cast<std::size_t>(n) * n, 0.0);
  constexpr long chunk_rows = 4096;

  auto flush = [&] {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        total[i * n + j] += chunk[i * n + j];
        chunk[i * n + j] = 0.0;
      }
  };

  long t = 0;
  for (;; ++t) {
    const int active = static_cast<int>(std::min<long>(t + 1, n));
    if (t < n) g[t] = 1.0L / (static_cast<long double>(wb.weights[t]) * std::sqrt(static_cast<long double>(q + t * s)));
    const long double k = q + static_cast<long double>(t) * s;
    for (int j = 0; j < active; ++j) v[j] = static_cast<double>(k * g[j]);
    for (int i = 0; i < active; ++i) {
      const double vi = v[i];
      double* row = &chunk[static_cast<std::size_t>(i) * n];
      for (int j = 0; j <= i; ++j) row[j] += vi * v[j];
    }
    if ((t + 1) % chunk_rows == 0) flush();

    // Ratio R_{p_j}(m+1)/R_{p_j}(m) at m = t - j: the numerator prod (s t + q + i) is shared by all j.
    long double num = 1.0L;
    for (int i = 0; i < s; ++i) num *= (s * static_cast<long double>(t) + q + i) / s;
    bool done = t >= n - 1;
    for (int j = 0; j < active; ++j) {
      const long double m = t - j;
      long double den = m + 1.0L;
      for (int l = 1; l < s; ++l) den *= (sm1 * t + j + q + l) / sm1;
      const long double r = num / den;
      if (done) {
        const long double amp = (k + s) / k * r;
        const long double term = static_cast<long double>(v[j]) * v[j];
        const long double diag = total[j * n + j] + chunk[j * n + j];
        if (!(amp <= 1.0L && tail_small(term, eta2, diag, tol))) done = false;
      }
      g[j] *= r * eta;
    }
    if (done) break;
    if (t > 400000000L) fail(ErrorKind::iteration, "weighted_block: too many rows");
  }
  flush();
  wb.terms = t + 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double x = static_cast<double>(total[i * n + j]);
      wb.matrix(i, j) = x;
      wb.matrix(j, i) = x;
    }
  return wb;
}

double spike_constant(int s) {
  validate_order(s);
  return std::sqrt(static_cast<double>(s) / (2.0 * std::numbers::pi * (s - 1)));
}

SpikeVector spike_vector(int s, int q, double beta, int n) {
  validate_block(s, q, beta);
  require(n >= 1, ErrorKind::domain, "spike vector needs N >= 1");
  const double cs = spike_constant(s);
  SpikeVector sv;
  for (int j = 0; j < n; ++j) {
    const double d = cs * std::pow(block_index(s, q, j), -1.0 - beta);
    sv.entries.push_back(d);
    sv.gamma_truncated += d * d;
  }
  // sum_j (q + j s)^-a by direct summation plus an Euler-Maclaurin tail.
  const double a = 2.0 + 2.0 * beta;
  const int cut = std::max(4000, n);
  long double head = 0.0L;
  for (int j = cut - 1; j >= 0; --j) head += std::pow(static_cast<long double>(q) + static_cast<long double>(j) * s, -a);
  const long double x = q + static_cast<long double>(cut) * s;
  const long double f = std::pow(x, -a);
  const long double integral = x * f / (s * (a - 1.0));
  const long double df = -a * s * f / x;
  const long double d3f = -a * (a + 1) * (a + 2) * s * s * s * f / (x * x * x);
  const long double tail = integral + f / 2 - df / 12 + d3f / 720;
  sv.gamma_analytic = static_cast<double>(cs * cs * (head + tail));
  return sv;
}

}  // namespace oneharm
