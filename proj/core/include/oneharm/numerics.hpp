#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace oneharm {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Least squares through Householder QR; rows are observations.
std::vector<double> least_squares(const std::vector<std::vector<double>>& design, const std::vector<double>& rhs);

// n points from a to b inclusive, linear or geometric.
std::vector<double> linspace(double a, double b, int n);
std::vector<double> geomspace(double a, double b, int n);

// Grid approaching 1 from below: 1 - geomspace(1-a, 1-b, n).
std::vector<double> ratio_grid(double a, double b, int n);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b].
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                           double rel_tol, int max_depth = 40);

// Runs f(i) for i in [0, n) on up to `threads` workers; results land in index order.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f);

void set_default_threads(unsigned threads);
unsigned default_threads();

using ComplexVector = std::vector<std::complex<double>>;

struct OdeOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  double min_step = 1e-14;  // as a fraction of the segment
  long max_steps = 2000000;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
};

// Integrates dy/dz = f(z, y) along the straight segment from z0 to z1 with Dormand-Prince 5(4).
ComplexVector integrate_segment(const std::function<void(std::complex<double>, const ComplexVector&, ComplexVector&)>& f,
                                std::complex<double> z0, std::complex<double> z1, ComplexVector y,
                                const OdeOptions& opt, OdeStats* stats = nullptr);

}  // namespace oneharm
