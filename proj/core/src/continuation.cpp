#include "oneharm/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oneharm/error.hpp"
#include "oneharm/maps.hpp"
#include "oneharm/numerics.hpp"
#include "oneharm/raney.hpp"

namespace oneharm {

std::string to_string(Side side) {
  switch (side) {
    case Side::above: return "above";
    case Side::below: return "below";
    case Side::none: break;
  }
  return "none";
}

HypParams hyp_params(int s, int p) {
  validate_raney_args(s, p);
  HypParams hp;
  hp.s = s;
  hp.p = p;
  for (int k = 0; k < s; ++k) {
    Rational a(p + k, s);
    a.canonicalize();
    hp.upper.push_back(a);
    hp.upper.push_back(a);
  }
  hp.lower.push_back(Rational(1));
  for (int l = 1; l < s; ++l) {
    Rational b(p + l, s - 1);
    b.canonicalize();
    hp.lower.push_back(b);
    hp.lower.push_back(b);
  }
  Rational su = 0, sl = 0;
  for (const auto& a : hp.upper) su += a;
  for (const auto& b : hp.lower) sl += b;
  hp.excess = sl - su;
  std::vector<Rational> lower = hp.lower;
  for (const auto& a : hp.upper) {
    auto it = std::find(lower.begin(), lower.end(), a);
    if (it != lower.end()) {
      lower.erase(it);
      ++hp.cancellations;
    } else {
      hp.reduced_upper.push_back(a);
    }
  }
  hp.reduced_lower = lower;
  return hp;
}

std::vector<Rational> hypergeometric_coefficients(const HypParams& hp, int m_max) {
  require(m_max >= 0, ErrorKind::domain, "m_max must be >= 0");
  std::vector<Rational> a(m_max + 1);
  a[0] = 1;
  for (int m = 0; m < m_max; ++m) {
    Rational r = a[m];
    for (const auto& x : hp.reduced_upper) r *= x + m;
    r /= m + 1;
    for (const auto& y : hp.reduced_lower) r /= y + m;
    r.canonicalize();
    a[m + 1] = r;
  }
  return a;
}

namespace {

struct TermRatio {
  std::vector<double> upper, lower;
  explicit TermRatio(const HypParams& hp) {
    for (const auto& x : hp.reduced_upper) upper.push_back(x.get_d());
    for (const auto& y : hp.reduced_lower) lower.push_back(y.get_d());
  }
  // a_{m+1} / a_m
  double operator()(double m) const {
    double r = 1.0 / (m + 1.0);
    for (std::size_t i = 0; i < upper.size(); ++i) {
      r *= m + upper[i];
      if (i < lower.size()) r /= m + lower[i];
    }
    return r;
  }
};

double zeta_c_sq(int s) {
  const double z = zeta_c(s);
  return z * z;
}

template <class T>
T series_sum(int s, int p, T xi, double tol, double limit = 0.98) {
  const HypParams hp = hyp_params(s, p);
  const TermRatio ratio(hp);
  const double rx = std::abs(xi);
  require(rx <= limit + 1e-15, ErrorKind::domain, "series region exceeded; use gp_continue");
  T sum = 1.0, term = 1.0;
  for (long m = 0;; ++m) {
    const double r = ratio(static_cast<double>(m));
    term *= r * xi;
    sum += term;
    if (r <= 1.0 && std::abs(term) * rx / (1.0 - rx) < tol * std::abs(sum)) break;
    if (m > 100000000L) fail(ErrorKind::iteration, "gp_series: too many terms");
  }
  return sum;
}

}  // namespace

double gp_series(int s, int p, double u, double tol) { return series_sum<double>(s, p, u / zeta_c_sq(s), tol); }

Complex gp_series(int s, int p, Complex u, double tol) { return series_sum<Complex>(s, p, u / zeta_c_sq(s), tol); }

namespace {

// Series coefficients in extended precision, grown on demand and shared across evaluation points.
class ExtendedSeries {
 public:
  explicit ExtendedSeries(const HypParams& hp) {
    for (const auto& x : hp.reduced_upper) up_.push_back(Extended(x.get_num().get_str()) / Extended(x.get_den().get_str()));
    for (const auto& y : hp.reduced_lower) lo_.push_back(Extended(y.get_num().get_str()) / Extended(y.get_den().get_str()));
    a_.push_back(Extended(1));
  }

  Extended sum(const Extended& xi, const Extended& tol) {
    require(abs(xi) < 1, ErrorKind::domain, "series region exceeded");
    const Extended rx = abs(xi);
    Extended total = 0, power = 1;
    for (std::size_t m = 0;; ++m) {
      grow(m + 1);
      const Extended term = a_[m] * power;
      total += term;
      if (m > 0 && !(a_[m + 1] > a_[m]) && abs(term) * rx / (1 - rx) < tol * abs(total)) break;
      if (m > 100000000UL) fail(ErrorKind::iteration, "gp_series: too many terms");
      power *= xi;
    }
    return total;
  }

 private:
  void grow(std::size_t m) {
    while (a_.size() <= m) {
      const std::size_t k = a_.size() - 1;
      Extended num = 1, den = Extended(k + 1);
      for (const auto& x : up_) num *= x + k;
      for (const auto& y : lo_) den *= y + k;
      a_.push_back(a_.back() * num / den);
    }
  }

  std::vector<Extended> up_, lo_, a_;
};

}  // namespace

Extended gp_series_xi(int s, int p, const Extended& xi, const Extended& tol) {
  ExtendedSeries series(hyp_params(s, p));
  return series.sum(xi, tol);
}

std::vector<Complex> theta_series(int s, int p, Complex xi, int order, double tol) {
  const HypParams hp = hyp_params(s, p);
  const TermRatio ratio(hp);
  const double rx = std::abs(xi);
  require(rx <= 0.75, ErrorKind::domain, "theta_series seed must satisfy |xi| <= 0.75");
  std::vector<Complex> y(order, 0.0);
  Complex term = 1.0;  // a_m xi^m
  for (long m = 0;; ++m) {
    double mk = 1.0;
    double biggest = 0.0;
    for (int k = 0; k < order; ++k) {
      y[k] += mk * term;
      biggest = std::max(biggest, mk * std::abs(term) / std::max(1e-300, std::abs(y[k])));
      mk *= static_cast<double>(m);
    }
    const double r = ratio(static_cast<double>(m));
    // Tail ratios are below ((m+1)/m)^order r |xi| <= (1 + |xi|)/2 once the check passes.
    const double growth = (m == 0 ? 2.0 : std::pow((m + 1.0) / m, order)) * std::max(r, 1.0) * rx;
    if (m > 5 && growth <= 0.5 * (1.0 + rx) && biggest * 2.0 / (1.0 - rx) < tol) break;
    if (m > 10000000L) fail(ErrorKind::iteration, "theta_series: too many terms");
    term *= r * xi;
  }
  return y;
}

namespace {

// Coefficients (lowest degree first) of c(theta) = theta prod (theta + b - 1) and d(theta) = prod (theta + a).
struct ThetaOperator {
  std::vector<double> c, d;
  int order = 0;
};

std::vector<Rational> poly_from_roots(const std::vector<Rational>& shifts) {
  std::vector<Rational> poly{Rational(1)};
  for (const auto& sh : shifts) {
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i] * sh;
      next[i + 1] += poly[i];
    }
    poly = std::move(next);
  }
  return poly;
}

ThetaOperator theta_operator(const HypParams& hp) {
  std::vector<Rational> cs{Rational(0)};
  for (const auto& b : hp.reduced_lower) cs.push_back(b - 1);
  const auto c = poly_from_roots(cs);
  const auto d = poly_from_roots(hp.reduced_upper);
  require(c.size() == d.size(), ErrorKind::validation, "reduced operator has unbalanced orders");
  ThetaOperator op;
  op.order = static_cast<int>(c.size()) - 1;
  for (const auto& x : c) op.c.push_back(x.get_d());
  for (const auto& x : d) op.d.push_back(x.get_d());
  return op;
}

Complex top_theta(const ThetaOperator& op, Complex xi, const std::vector<Complex>& y) {
  Complex acc = 0.0;
  for (int k = 0; k < op.order; ++k) acc += (op.c[k] - xi * op.d[k]) * y[k];
  return -acc / (1.0 - xi);
}

ContinuationState transport(int s, int p, const std::vector<Complex>& xi_path, const ContinuationOptions& opt) {
  const HypParams hp = hyp_params(s, p);
  const ThetaOperator op = theta_operator(hp);
  require(op.order >= 2, ErrorKind::validation, "reduced order below 2 is not supported");
  const double zc2 = zeta_c_sq(s);
  for (std::size_t i = 0; i + 1 < xi_path.size(); ++i) {
    // Distance from the singular points 0 and 1 to each segment.
    const Complex a = xi_path[i], b = xi_path[i + 1];
    for (Complex sing : {Complex(0.0), Complex(1.0)}) {
      const Complex ab = b - a;
      double t = std::abs(ab) == 0.0 ? 0.0 : std::clamp(std::real((sing - a) * std::conj(ab)) / std::norm(ab), 0.0, 1.0);
      const double dist = std::abs(a + t * ab - sing);
      const double limit = sing == Complex(0.0) ? 1e-3 : opt.exclusion;
      if (dist < limit) fail(ErrorKind::path, "continuation path passes through a singular point");
    }
  }
  auto y = theta_series(s, p, xi_path.front(), op.order, std::min(opt.tol * 1e-2, 1e-15));
  OdeOptions oo;
  oo.rel_tol = opt.tol;
  OdeStats stats;
  auto rhs = [&](Complex xi, const ComplexVector& yy, ComplexVector& out) {
    for (int k = 0; k + 1 < op.order; ++k) out[k] = yy[k + 1] / xi;
    out[op.order - 1] = top_theta(op, xi, yy) / xi;
  };
  for (std::size_t i = 0; i + 1 < xi_path.size(); ++i)
    y = integrate_segment(rhs, xi_path[i], xi_path[i + 1], y, oo, &stats);

  ContinuationState st;
  const Complex xi = xi_path.back();
  st.u = xi * zc2;
  st.theta = y;
  st.theta.push_back(top_theta(op, xi, y));
  st.value = y[0];
  const Complex u = st.u;
  st.derivs = {y[0], st.theta[1] / u, (st.theta[2] - st.theta[1]) / (u * u)};
  for (const auto& z : xi_path) st.path.push_back(z * zc2);
  st.steps = stats.accepted + stats.rejected;
  return st;
}

}  // namespace

ContinuationState gp_continue(int s, int p, Complex u, Side side, const ContinuationOptions& opt) {
  validate_raney_args(s, p);
  require(std::isfinite(u.real()) && std::isfinite(u.imag()), ErrorKind::domain, "u must be finite");
  const Complex xi = u / zeta_c_sq(s);
  require(std::abs(xi) >= 1e-3, ErrorKind::path, "target too close to the singular point at the origin");
  require(std::abs(xi - 1.0) >= opt.exclusion, ErrorKind::path, "target inside the exclusion disc around the branch point");
  const bool on_cut = xi.imag() == 0.0 && xi.real() > 1.0;
  if (on_cut && side == Side::none) fail(ErrorKind::domain, "a side of the cut is required for real u > zeta_c^2");
  double sigma = 1.0;
  if (xi.imag() > 0.0) sigma = 1.0;
  else if (xi.imag() < 0.0) sigma = -1.0;
  else if (side == Side::below) sigma = -1.0;
  const Complex up(0.0, sigma * opt.detour);
  std::vector<Complex> path{Complex(opt.seed, 0.0), opt.seed + up};
  // Geometric waypoints keep the step scale commensurate with |xi| on long legs.
  const double target = xi.real();
  for (double x = 4.0 * opt.seed; x < std::fabs(target) / 4.0; x *= 4.0) path.push_back(std::copysign(x, target) + up);
  path.push_back(target + up);
  path.push_back(xi);
  auto st = transport(s, p, path, opt);
  st.side = on_cut ? side : Side::none;
  return st;
}

ContinuationState gp_continue_path(int s, int p, const std::vector<Complex>& path, const ContinuationOptions& opt) {
  validate_raney_args(s, p);
  require(path.size() >= 2, ErrorKind::path, "path needs at least two points");
  std::vector<Complex> xi;
  for (const auto& u : path) xi.push_back(u / zeta_c_sq(s));
  require(std::abs(xi.front()) <= 0.75, ErrorKind::path, "path must start inside the series disc");
  return transport(s, p, xi, opt);
}

double RationalOverPi::value() const { return coefficient.get_d() / std::numbers::pi; }

RationalOverPi B_closed_form(int s, int p) {
  validate_raney_args(s, p);
  Rational c = -Rational(p * p, 4) * rational_pow(Rational(s), 2 * p - 1) / rational_pow(Rational(s - 1), 2 * p + 1);
  c.canonicalize();
  return {c};
}

RationalOverPi edge_density_closed_exact(int s, int p) {
  validate_raney_args(s, p);
  Rational c = Rational(p, 2) * rational_pow(Rational(s), 2 * p + 1) / rational_pow(Rational(s - 1), 2 * p + 1);
  c.canonicalize();
  return {c};
}

double edge_density_closed(int s, int p) { return edge_density_closed_exact(s, p).value(); }

namespace {

template <class T>
std::vector<T> solve_normal(const std::vector<std::vector<T>>& design, const std::vector<T>& rhs) {
  const std::size_t n = design[0].size();
  std::vector<std::vector<T>> a(n, std::vector<T>(n + 1, T(0)));
  for (std::size_t r = 0; r < design.size(); ++r)
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i][j] += design[r][i] * design[r][j];
      a[i][n] += design[r][i] * rhs[r];
    }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(a[i][k]) > abs(a[piv][k])) piv = i;
    std::swap(a[k], a[piv]);
    require(a[k][k] != T(0), ErrorKind::conditioning, "singular normal equations");
    for (std::size_t i = k + 1; i < n; ++i) {
      const T f = a[i][k] / a[k][k];
      for (std::size_t j = k; j <= n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  std::vector<T> x(n);
  for (std::size_t k = n; k-- > 0;) {
    T acc = a[k][n];
    for (std::size_t j = k + 1; j < n; ++j) acc -= a[k][j] * x[j];
    x[k] = acc / a[k][k];
  }
  return x;
}

}  // namespace

ResonantCoefficients resonant_fit(int s, int p, const std::vector<double>& eps_grid, Precision precision) {
  validate_raney_args(s, p);
  if (eps_grid.size() < 5) fail(ErrorKind::conditioning, "resonant fit needs at least five grid points");
  const auto [lo, hi] = std::minmax_element(eps_grid.begin(), eps_grid.end());
  require(*lo >= 1e-4 * (1 - 1e-12) && *hi < 0.1, ErrorKind::domain, "eps grid must lie in [1e-4, 1e-1)");
  if (*hi / *lo < 10.0) fail(ErrorKind::conditioning, "eps grid too narrow for a stable resonant fit");
  ResonantCoefficients rc;
  rc.B_at_branch = B_closed_form(s, p).value();
  std::vector<double> x(4);
  if (precision == Precision::extended) {
    std::vector<std::vector<Extended>> design;
    std::vector<Extended> rhs;
    ExtendedSeries series(hyp_params(s, p));
    for (double eps : eps_grid) {
      const Extended w = eps;
      design.push_back({Extended(1), w, w * w, w * w * log(w)});
      rhs.push_back(series.sum(1 - w, Extended("1e-32")));
    }
    const auto sol = solve_normal(design, rhs);
    for (int i = 0; i < 4; ++i) x[i] = static_cast<double>(sol[i]);
    Extended ss = 0;
    for (std::size_t r = 0; r < rhs.size(); ++r) {
      Extended res = rhs[r];
      for (int i = 0; i < 4; ++i) res -= design[r][i] * sol[i];
      ss += res * res;
    }
    rc.rms = static_cast<double>(sqrt(ss / rhs.size()));
  } else {
    std::vector<std::vector<double>> design;
    std::vector<double> rhs;
    for (double w : eps_grid) {
      design.push_back({1.0, w, w * w, w * w * std::log(w)});
      rhs.push_back(series_sum<double>(s, p, 1.0 - w, 1e-17, 1.0 - 1e-6));
    }
    x = least_squares(design, rhs);
    double ss = 0;
    for (std::size_t r = 0; r < rhs.size(); ++r) {
      double res = rhs[r];
      for (int i = 0; i < 4; ++i) res -= design[r][i] * x[i];
      ss += res * res;
    }
    rc.rms = std::sqrt(ss / rhs.size());
  }
  rc.A_fit = {x[0], x[1], x[2]};
  rc.B_fit = x[3];
  return rc;
}

Complex sigma_from_state(int s, int p, const ContinuationState& st) {
  const double ps = p, ss = s;
  return (ps * ps * st.theta[0] + 2.0 * ps * ss * st.theta[1] + ss * ss * st.theta[2]) / ps;
}

Complex sigma_cont(int s, int p, Complex u, Side side, const ContinuationOptions& opt) {
  return sigma_from_state(s, p, gp_continue(s, p, u, side, opt));
}

DensityValue disc_density(int s, int p, double u, const ContinuationOptions& opt) {
  validate_raney_args(s, p);
  const double zc2 = zeta_c_sq(s);
  require(u > zc2 * (1.0 + 1e-4), ErrorKind::domain, "disc_density needs u > zeta_c^2 (1 + 1e-4)");
  const Complex plus = sigma_cont(s, p, u, Side::above, opt);
  const Complex minus = sigma_cont(s, p, u, Side::below, opt);
  const Complex d = (plus - minus) / Complex(0.0, 2.0 * std::numbers::pi);
  return {d.real(), d.imag()};
}

double disc_density_rho(int s, int p, double u, double tol) {
  ContinuationOptions opt;
  opt.tol = tol;
  const auto dv = disc_density(s, p, u, opt);
  if (std::fabs(dv.imag_residue) > 1e3 * tol * std::max(1.0, std::fabs(dv.rho)))
    fail(ErrorKind::accuracy, "discontinuity has a non-negligible imaginary residue");
  return dv.rho;
}

double edge_density_extrapolated(int s, int p, const ContinuationOptions& opt) {
  const double zc2 = zeta_c_sq(s);
  std::vector<std::vector<double>> design;
  std::vector<double> rhs;
  for (double eps : {1e-3, 2e-3, 3e-3, 4e-3, 6e-3, 8e-3, 1e-2, 1.4e-2, 2e-2}) {
    rhs.push_back(disc_density(s, p, zc2 * (1.0 + eps), opt).rho);
    design.push_back({1.0, eps, eps * eps, eps * eps * eps});
  }
  return least_squares(design, rhs)[0];
}

}  // namespace oneharm
