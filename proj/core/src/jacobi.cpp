#include "oneharm/jacobi.hpp"

#include <cmath>
#include <numbers>

#include "oneharm/continuation.hpp"
#include "oneharm/error.hpp"
#include "oneharm/linalg.hpp"
#include "oneharm/maps.hpp"
#include "oneharm/numerics.hpp"
#include "oneharm/raney.hpp"

namespace oneharm {

MomentSequence moments(int s, int p, int n_max) {
  validate_raney_args(s, p);
  require(n_max >= 0, ErrorKind::domain, "n_max must be >= 0");
  MomentSequence ms{s, p, {}};
  const Rational zc2 = rational_pow(thresholds(s).zeta_c, 2);
  const auto r = raney_table(s, p, n_max);
  Rational scale = 1;
  for (int n = 0; n <= n_max; ++n) {
    Rational m = Rational(r[n] * r[n]) * scale;
    m.canonicalize();
    ms.values.push_back(m);
    scale *= zc2;
  }
  return ms;
}

namespace {

Rational determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && sgn(a[piv][k]) == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a[i][k]) == 0) continue;
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  det.canonicalize();
  return det;
}

}  // namespace

HankelReport hankel_minors(const MomentSequence& mseq, int k_max) {
  require(k_max >= 0 && 2 * k_max < static_cast<int>(mseq.values.size()), ErrorKind::domain,
          "not enough moments for the requested Hankel depth");
  HankelReport rep;
  rep.positive = true;
  for (int k = 0; k <= k_max; ++k) {
    std::vector<std::vector<Rational>> h(k + 1, std::vector<Rational>(k + 1));
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j) h[i][j] = mseq.values[i + j];
    rep.minors.push_back(determinant(std::move(h)));
    if (sgn(rep.minors.back()) <= 0) rep.positive = false;
  }
  return rep;
}

bool hankel_positivity(const MomentSequence& mseq, int k_max) { return hankel_minors(mseq, k_max).positive; }

JacobiData jacobi_coefficients(const MomentSequence& mseq, int n) {
  require(n >= 1, ErrorKind::domain, "Jacobi depth must be >= 1");
  require(static_cast<int>(mseq.values.size()) >= 2 * n, ErrorKind::domain, "need moments m_0..m_{2n-1}");
  const auto& m = mseq.values;
  JacobiData jd;
  jd.s = mseq.s;
  jd.p = mseq.p;
  // Chebyshev's algorithm: sig[k][l] = <P_k, x^l>.
  const int width = 2 * n;
  std::vector<Rational> prev(width, Rational(0)), cur(m.begin(), m.begin() + width);
  require(sgn(cur[0]) > 0, ErrorKind::positivity, "m_0 must be positive");
  Rational alpha = cur[1] / cur[0], beta = cur[0];
  alpha.canonicalize();
  jd.b_exact.push_back(alpha);
  jd.norms.push_back(cur[0]);
  for (int k = 1; k < n; ++k) {
    std::vector<Rational> next(width, Rational(0));
    for (int l = k; l <= width - k - 1; ++l) {
      next[l] = cur[l + 1] - alpha * cur[l] - beta * prev[l];
      next[l].canonicalize();
    }
    if (sgn(next[k]) <= 0)
      fail(ErrorKind::positivity, "non-positive Hankel ratio at depth " + std::to_string(k));
    Rational new_alpha = next[k + 1] / next[k] - cur[k] / cur[k - 1];
    Rational new_beta = next[k] / cur[k - 1];
    new_alpha.canonicalize();
    new_beta.canonicalize();
    jd.b_exact.push_back(new_alpha);
    jd.a2_exact.push_back(new_beta);
    jd.norms.push_back(next[k]);
    prev = std::move(cur);
    cur = std::move(next);
    alpha = new_alpha;
    beta = new_beta;
  }
  const double scale = 1.0 / rational_pow(thresholds(mseq.s).zeta_c, 2).get_d();
  for (const auto& b : jd.b_exact) jd.b.push_back(b.get_d() * scale);
  for (const auto& a2 : jd.a2_exact) jd.a.push_back(std::sqrt(a2.get_d()) * scale);
  return jd;
}

std::vector<std::vector<Rational>> orthogonal_polynomials(const JacobiData& jac, int count) {
  require(count >= 1 && count <= jac.size() + 1, ErrorKind::domain, "too many polynomials requested");
  std::vector<std::vector<Rational>> polys{{Rational(1)}};
  for (int k = 0; k + 1 < count; ++k) {
    const auto& pk = polys[k];
    std::vector<Rational> next(pk.size() + 1, Rational(0));
    for (std::size_t i = 0; i < pk.size(); ++i) {
      next[i + 1] += pk[i];
      next[i] -= jac.b_exact[k] * pk[i];
    }
    if (k >= 1)
      for (std::size_t i = 0; i < polys[k - 1].size(); ++i) next[i] -= jac.a2_exact[k - 1] * polys[k - 1][i];
    for (auto& c : next) c.canonicalize();
    polys.push_back(std::move(next));
  }
  return polys;
}

std::vector<double> jacobi_spectrum(const JacobiData& jac) {
  const int n = jac.size();
  SymMatrix t(n);
  for (int i = 0; i < n; ++i) {
    t(i, i) = jac.b[i];
    if (i + 1 < n) t(i, i + 1) = t(i + 1, i) = jac.a[i];
  }
  return sym_eig(t).values;
}

std::complex<double> weyl_function(const JacobiData& jac, std::complex<double> u) {
  const int n = jac.size();
  require(n >= 1, ErrorKind::domain, "empty Jacobi data");
  std::complex<double> d = 1.0 - u * jac.b[n - 1];
  for (int k = n - 2; k >= 0; --k) {
    const double a = jac.a[k];
    const std::complex<double> scale = 1.0 + std::abs(u * jac.b[k]) + std::abs(u * u) * a * a;
    if (std::abs(d) < 1e-14 * std::abs(scale)) fail(ErrorKind::conditioning, "Weyl function evaluated at a pole");
    d = 1.0 - u * jac.b[k] - u * u * a * a / d;
  }
  if (std::abs(d) < 1e-14) fail(ErrorKind::conditioning, "Weyl function evaluated at a pole");
  return 1.0 / d;
}

double perron_density(int s, int p, double t, double tol) {
  const double zc = zeta_c(s);
  const double t_max = 1.0 / (zc * zc);
  require(t > 1e-12 * t_max * (1 - 1e-12) && t < t_max * (1.0 - 1e-3 * (1 - 1e-12)), ErrorKind::domain,
          "t must lie in [1e-12, 1 - 1e-3] times the support length");
  ContinuationOptions opt;
  opt.tol = tol;
  const auto st = gp_continue(s, p, 1.0 / t, Side::above, opt);
  return st.value.imag() / (std::numbers::pi * t);
}

PerronMass perron_mass(int s, int p, double delta, double tol, double left_delta) {
  require(delta >= 1e-3 * (1 - 1e-12) && delta < 0.25, ErrorKind::domain, "delta must lie in [1e-3, 0.25)");
  if (left_delta <= 0.0) left_delta = delta;
  require(left_delta >= 1e-12 * (1 - 1e-12) && left_delta < 0.25, ErrorKind::domain, "left_delta must lie in [1e-12, 0.25)");
  const double zc = zeta_c(s);
  const double t_max = 1.0 / (zc * zc);
  PerronMass pm;
  for (int power = 0; power <= 2; ++power) {
    // Left half in log t, where the density behaves like a power of t.
    auto left = [&](double v) {
      const double t = std::exp(v);
      return std::pow(t, power + 1) * perron_density(s, p, t, 1e-11);
    };
    auto right = [&](double t) { return std::pow(t, power) * perron_density(s, p, t, 1e-11); };
    const auto a = integrate(left, std::log(left_delta * t_max), std::log(0.5 * t_max), 0.0, tol, 30);
    const auto b = integrate(right, 0.5 * t_max, (1.0 - delta) * t_max, 0.0, tol, 30);
    const double value = a.value + b.value;
    if (power == 0) {
      pm.mass = value;
      pm.error = a.error + b.error;
    } else if (power == 1) {
      pm.first_moment = value;
    } else {
      pm.second_moment = value;
    }
  }
  return pm;
}

}  // namespace oneharm
