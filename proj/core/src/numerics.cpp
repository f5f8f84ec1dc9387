#include "oneharm/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <queue>
#include <thread>

#include "oneharm/error.hpp"

namespace oneharm {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size(), ErrorKind::fit, "fit_line: size mismatch");
  require(x.size() >= 2, ErrorKind::fit, "fit_line: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0.0, ErrorKind::fit, "fit_line: abscissae are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

std::vector<double> least_squares(const std::vector<std::vector<double>>& design, const std::vector<double>& rhs) {
  const std::size_t m = design.size();
  require(m > 0 && m == rhs.size(), ErrorKind::fit, "least_squares: bad shapes");
  const std::size_t n = design[0].size();
  require(m >= n, ErrorKind::fit, "least_squares: underdetermined");
  std::vector<std::vector<double>> a = design;
  std::vector<double> b = rhs, rdiag(n);
  for (std::size_t k = 0; k < n; ++k) {
    double nrm = 0;
    for (std::size_t i = k; i < m; ++i) nrm = std::hypot(nrm, a[i][k]);
    require(nrm > 0.0, ErrorKind::conditioning, "least_squares: rank deficient design");
    if (a[k][k] < 0) nrm = -nrm;
    for (std::size_t i = k; i < m; ++i) a[i][k] /= nrm;
    a[k][k] += 1.0;
    for (std::size_t j = k + 1; j < n; ++j) {
      double s = 0;
      for (std::size_t i = k; i < m; ++i) s += a[i][k] * a[i][j];
      s = -s / a[k][k];
      for (std::size_t i = k; i < m; ++i) a[i][j] += s * a[i][k];
    }
    double s = 0;
    for (std::size_t i = k; i < m; ++i) s += a[i][k] * b[i];
    s = -s / a[k][k];
    for (std::size_t i = k; i < m; ++i) b[i] += s * a[i][k];
    rdiag[k] = -nrm;
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * x[j];
    x[k] = s / rdiag[k];
  }
  return x;
}

std::vector<double> linspace(double a, double b, int n) {
  require(n >= 1, ErrorKind::domain, "grid needs at least one point");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return g;
}

std::vector<double> geomspace(double a, double b, int n) {
  require(a > 0 && b > 0, ErrorKind::domain, "geometric grid needs positive endpoints");
  auto g = linspace(std::log(a), std::log(b), n);
  for (double& x : g) x = std::exp(x);
  if (n >= 1) g.front() = a;
  if (n >= 2) g.back() = b;
  return g;
}

std::vector<double> ratio_grid(double a, double b, int n) {
  require(a < 1.0 && b < 1.0, ErrorKind::domain, "ratio grid endpoints must lie below 1");
  auto g = geomspace(1.0 - a, 1.0 - b, n);
  for (double& x : g) x = 1.0 - x;
  return g;
}

namespace {

constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  int depth;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const std::function<double(double)>& f, double a, double b, int depth) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * wgk[7], g = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    const double x = h * xgk[j];
    const double f1 = f(c - x), f2 = f(c + x);
    k += wgk[j] * (f1 + f2);
    if (j % 2 == 1) g += wg[j / 2] * (f1 + f2);
  }
  return {a, b, k * h, std::fabs((k - g) * h), depth};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                           double rel_tol, int max_depth) {
  std::priority_queue<Piece> heap;
  heap.push(gk15(f, a, b, 0));
  QuadratureResult r;
  r.evaluations = 15;
  double total = heap.top().value, err = heap.top().error;
  std::vector<Piece> done;
  while (!heap.empty() && err > std::max(abs_tol, rel_tol * std::fabs(total)) && r.evaluations < 200000) {
    Piece p = heap.top();
    heap.pop();
    if (p.depth >= max_depth) {
      done.push_back(p);
      continue;
    }
    const double m = 0.5 * (p.a + p.b);
    const Piece l = gk15(f, p.a, m, p.depth + 1), rr = gk15(f, m, p.b, p.depth + 1);
    r.evaluations += 30;
    total += l.value + rr.value - p.value;
    err += l.error + rr.error - p.error;
    heap.push(l);
    heap.push(rr);
  }
  // Re-sum from the leaves to shed accumulated cancellation in the running totals.
  total = 0;
  err = 0;
  for (const auto& p : done) {
    total += p.value;
    err += p.error;
  }
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  r.value = total;
  r.error = err;
  return r;
}

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_default_threads(unsigned threads) { g_threads = std::max(1u, threads); }
unsigned default_threads() { return g_threads.load(); }

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!first) first = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

ComplexVector integrate_segment(const std::function<void(std::complex<double>, const ComplexVector&, ComplexVector&)>& f,
                                std::complex<double> z0, std::complex<double> z1, ComplexVector y,
                                const OdeOptions& opt, OdeStats* stats) {
  using C = std::complex<double>;
  const C dz = z1 - z0;
  if (std::abs(dz) == 0.0) return y;
  const std::size_t n = y.size();
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  ComplexVector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);
  auto rhs = [&](double tau, const ComplexVector& yy, ComplexVector& out) {
    f(z0 + tau * dz, yy, out);
    for (auto& v : out) v *= dz;
  };
  double tau = 0.0, h = 0.01;
  rhs(tau, y, k1);
  long steps = 0;
  OdeStats local;
  while (tau < 1.0) {
    if (++steps > opt.max_steps) fail(ErrorKind::stiffness, "ODE step budget exhausted");
    if (tau + h > 1.0) h = 1.0 - tau;
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    rhs(tau + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(tau + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(tau + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(tau + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(tau + h, tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(tau + h, ynew, k7);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const C e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      err = std::max(err, std::abs(e));
      scale = std::max(scale, std::max(std::abs(y[i]), std::abs(ynew[i])));
    }
    const double ratio = err / (opt.abs_tol + opt.rel_tol * scale);
    if (!std::isfinite(ratio)) fail(ErrorKind::stiffness, "ODE solution became non-finite");
    if (ratio <= 1.0) {
      tau += h;
      y.swap(ynew);
      k1.swap(k7);
      ++local.accepted;
    } else {
      ++local.rejected;
    }
    const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
    h *= factor;
    if (h < opt.min_step && tau < 1.0) fail(ErrorKind::stiffness, "ODE step size underflow");
  }
  if (stats) {
    stats->accepted += local.accepted;
    stats->rejected += local.rejected;
  }
  return y;
}

}  // namespace oneharm
