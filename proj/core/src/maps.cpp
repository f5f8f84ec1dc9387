#include "oneharm/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "oneharm/error.hpp"
#include "oneharm/raney.hpp"

namespace oneharm {

void validate_order(int s) {
  require(s >= 2, ErrorKind::domain, "symmetry order s must be >= 2, got " + std::to_string(s));
  require(s <= 64, ErrorKind::domain, "symmetry order s too large: " + std::to_string(s));
}

void MapConfig::validate() const {
  validate_order(s);
  require(std::isfinite(zeta) && zeta > 0.0, ErrorKind::domain, "zeta must be positive and finite");
}

Thresholds thresholds(int s) {
  validate_order(s);
  Thresholds t;
  t.s = s;
  t.zeta_c = rational_pow(Rational(s - 1), s - 1) / rational_pow(Rational(s), s);
  t.zeta_c.canonicalize();
  t.zeta_univ = Rational(1, s - 1);
  t.zeta_univ.canonicalize();
  t.ratio = t.zeta_c / t.zeta_univ;
  t.ratio.canonicalize();
  return t;
}

double zeta_c(int s) { return thresholds(s).zeta_c.get_d(); }
double zeta_univ(int s) { return 1.0 / (s - 1); }

namespace {

Complex taylor_seed(int s, Complex t) {
  const auto coeff = raney_table(s, 1, 9);
  Complex sum = 0.0, tp = 1.0;
  for (const auto& c : coeff) {
    sum += c.get_d() * tp;
    tp *= t;
  }
  return sum;
}

struct NewtonResult {
  Complex u;
  bool converged = false;
};

NewtonResult newton(int s, Complex t, Complex u, double tol) {
  for (int it = 0; it < 60; ++it) {
    const Complex us1 = std::pow(u, s - 1);
    const Complex f = u - 1.0 - t * us1 * u;
    const Complex df = 1.0 - static_cast<double>(s) * t * us1;
    if (std::abs(df) < 1e-8) fail(ErrorKind::branch_ambiguity, "Newton Jacobian vanishes near the branch point");
    const Complex step = f / df;
    u -= step;
    if (std::abs(step) <= 0.25 * tol * std::max(1.0, std::abs(u))) {
      const Complex res = u - 1.0 - t * std::pow(u, s);
      return {u, std::abs(res) < tol * std::max(1.0, std::abs(u))};
    }
  }
  return {u, false};
}

}  // namespace

Complex solve_u_of_t(int s, Complex t, double tol) {
  validate_order(s);
  require(tol > 0.0, ErrorKind::domain, "tol must be positive");
  const double tc = zeta_c(s);
  if (t == Complex(0.0)) return 1.0;
  const double ray_tol = 1e-14 * std::max(1.0, std::abs(t));
  if (std::abs(t.imag()) <= ray_tol && t.real() >= tc * (1.0 - 1e-15))
    fail(ErrorKind::branch_ambiguity, "t lies on the branch ray [zeta_c, inf)");

  // Radial continuation from the Taylor region |t| <= zeta_c/4.
  const double r = std::abs(t);
  double lambda = std::min(1.0, 0.25 * tc / r);
  Complex u = taylor_seed(s, lambda * t);
  auto first = newton(s, lambda * t, u, tol);
  if (!first.converged) fail(ErrorKind::iteration, "Newton failed at the seed point");
  u = first.u;
  double step = std::min(1.0 - lambda, 0.25 * lambda + 1e-3);
  int guard = 0;
  while (lambda < 1.0) {
    if (++guard > 100000) fail(ErrorKind::iteration, "radial continuation exhausted its step budget");
    const double next = std::min(1.0, lambda + step);
    const double tol_path = next < 1.0 ? std::max(tol, 1e-10) : tol;
    NewtonResult nr;
    try {
      nr = newton(s, next * t, u, tol_path);
    } catch (const Error& e) {
      if (next >= 1.0 || e.kind() != ErrorKind::branch_ambiguity) throw;
      nr.converged = false;
    }
    if (nr.converged && std::abs(nr.u - u) < 0.2 * std::abs(u)) {
      u = nr.u;
      lambda = next;
      step *= 1.5;
    } else {
      step *= 0.5;
      if (step < 1e-13) fail(ErrorKind::iteration, "radial continuation step underflow");
    }
  }
  return u;
}

Complex solve_u(const MapConfig& cfg, Complex x, double tol) {
  cfg.validate();
  return solve_u_of_t(cfg.s, cfg.zeta * std::pow(x, cfg.s), tol);
}

BranchPoint branch_point_data(int s) {
  validate_order(s);
  BranchPoint b;
  b.u_c = Rational(s, s - 1);
  b.u_c.canonicalize();
  b.kappa_sq = Rational(2 * s) / rational_pow(Rational(s - 1), 3);
  b.kappa_sq.canonicalize();
  b.kappa = std::sqrt(b.kappa_sq.get_d());
  return b;
}

double local_expansion_check(int s, double eps) {
  require(eps > 0.0 && eps < 0.1, ErrorKind::domain, "eps must lie in (0, 0.1)");
  const auto bp = branch_point_data(s);
  const Complex u = solve_u_of_t(s, zeta_c(s) * (1.0 - eps), 1e-15);
  return std::abs(u - (bp.u_c.get_d() - bp.kappa * std::sqrt(eps)));
}

UnivalenceResult is_univalent(const MapConfig& cfg) {
  cfg.validate();
  UnivalenceResult r;
  r.critical_value = Rational(cfg.s - 1) * exact_rational(cfg.zeta);
  r.critical_value.canonicalize();
  const int c = cmp(r.critical_value, Rational(1));
  r.univalent = c < 0;
  r.critical = c == 0;
  // Zeros of f'(w) = 1 - (s-1) zeta w^-s sit on the circle |w| = ((s-1) zeta)^(1/s).
  double largest = 0.0;
  for (int k = 0; k < cfg.s; ++k) {
    const Complex w = std::polar(std::pow(r.critical_value.get_d(), 1.0 / cfg.s), 2.0 * std::numbers::pi * k / cfg.s);
    largest = std::max(largest, std::abs(w));
  }
  r.critical_points_agree = r.critical || (r.univalent == (largest < 1.0));
  return r;
}

std::vector<Complex> boundary_trace(const MapConfig& cfg, const std::vector<double>& angles) {
  cfg.validate();
  std::vector<Complex> out;
  out.reserve(angles.size());
  for (double th : angles)
    out.push_back(std::polar(1.0, th) + cfg.zeta * std::polar(1.0, -(cfg.s - 1) * th));
  return out;
}

double boundary_injectivity_margin(const MapConfig& cfg, int n_samples) {
  cfg.validate();
  require(n_samples >= 16, ErrorKind::domain, "n_samples must be >= 16");
  double margin = std::numeric_limits<double>::infinity();
  for (int k = 1; k < n_samples; ++k) {
    const double d = std::numbers::pi * k / n_samples;
    margin = std::min(margin, std::fabs(std::sin(d)) - cfg.zeta * std::fabs(std::sin((cfg.s - 1) * d)));
  }
  return margin;
}

}  // namespace oneharm
