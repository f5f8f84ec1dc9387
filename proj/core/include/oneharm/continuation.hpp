#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <complex>
#include <string>
#include <vector>

#include "oneharm/exact.hpp"

namespace oneharm {

using Complex = std::complex<double>;
using Extended = boost::multiprecision::cpp_bin_float_50;

enum class Side { none, above, below };
std::string to_string(Side side);

struct HypParams {
  int s = 2;
  int p = 1;
  std::vector<Rational> upper;  // 2s entries
  std::vector<Rational> lower;  // 2s-1 entries
  std::vector<Rational> reduced_upper;
  std::vector<Rational> reduced_lower;
  Rational excess;  // sum(lower) - sum(upper)
  int cancellations = 0;

  int order() const { return static_cast<int>(reduced_upper.size()); }
};

HypParams hyp_params(int s, int p);

// a_0..a_{m_max} of the series in xi = u/zeta_c^2 from the hypergeometric term ratio, exact.
std::vector<Rational> hypergeometric_coefficients(const HypParams& hp, int m_max);

// Sum R^2 u^m; requires |u| <= 0.98 zeta_c^2.
double gp_series(int s, int p, double u, double tol = 1e-15);
Complex gp_series(int s, int p, Complex u, double tol = 1e-15);
// Extended-precision real sum in the rescaled variable xi.
Extended gp_series_xi(int s, int p, const Extended& xi, const Extended& tol);

// sum m^k a_m xi^m for k = 0..order-1 (theta^k applied termwise).
std::vector<Complex> theta_series(int s, int p, Complex xi, int order, double tol = 1e-16);

struct ContinuationOptions {
  double tol = 1e-12;
  double seed = 0.5;            // xi of the series seed
  double detour = 0.3;          // imaginary offset of the path around xi = 1
  double exclusion = 1e-4;      // radius around xi = 1, in xi units
};

struct ContinuationState {
  Complex u;
  Side side = Side::none;
  Complex value;
  std::vector<Complex> theta;   // theta^k G for k = 0..order (the top one from the equation)
  std::vector<Complex> derivs;  // G, G', G'' in u
  std::vector<Complex> path;    // waypoints in u
  long steps = 0;
};

ContinuationState gp_continue(int s, int p, Complex u, Side side, const ContinuationOptions& opt = {});
// Continuation along an explicit polyline of u-values; path[0] must lie inside the disc.
ContinuationState gp_continue_path(int s, int p, const std::vector<Complex>& path, const ContinuationOptions& opt = {});

struct RationalOverPi {
  Rational coefficient;  // value = coefficient / pi
  double value() const;
};

RationalOverPi B_closed_form(int s, int p);
RationalOverPi edge_density_closed_exact(int s, int p);
double edge_density_closed(int s, int p);

enum class Precision { double_precision, extended };

struct ResonantCoefficients {
  double B_at_branch = 0.0;
  double B_fit = 0.0;
  std::vector<double> A_fit;  // a0, a1, a2
  double rms = 0.0;
};

// Least-squares fit of G(zeta_c^2 (1-w)) = a0 + a1 w + a2 w^2 + b w^2 log w over w in eps_grid.
ResonantCoefficients resonant_fit(int s, int p, const std::vector<double>& eps_grid,
                                  Precision precision = Precision::extended);

// (1/p)(p + s u d/du)^2 G.
Complex sigma_cont(int s, int p, Complex u, Side side, const ContinuationOptions& opt = {});
Complex sigma_from_state(int s, int p, const ContinuationState& st);

struct DensityValue {
  double rho = 0.0;
  double imag_residue = 0.0;
};

// (1/(2 pi i)) (sigma(u+i0) - sigma(u-i0)) for real u > zeta_c^2.
DensityValue disc_density(int s, int p, double u, const ContinuationOptions& opt = {});
double disc_density_rho(int s, int p, double u, double tol = 1e-12);

// Limit of rho at u -> zeta_c^2 from above, by quadratic extrapolation in w.
double edge_density_extrapolated(int s, int p, const ContinuationOptions& opt = {});

}  // namespace oneharm
