#pragma once

#include <complex>
#include <vector>

#include "oneharm/exact.hpp"

namespace oneharm {

// m_n = R_{s,p}(n)^2 zeta_c^(2n), so the measure lives on [0, 1] in the rescaled variable.
struct MomentSequence {
  int s = 2;
  int p = 1;
  std::vector<Rational> values;
};

MomentSequence moments(int s, int p, int n_max);

struct HankelReport {
  bool positive = false;
  std::vector<Rational> minors;  // det(m_{i+j})_{0<=i,j<=k}, k = 0..k_max
};

HankelReport hankel_minors(const MomentSequence& mseq, int k_max);
bool hankel_positivity(const MomentSequence& mseq, int k_max);

// Monic recurrence P_{k+1} = (x - b_k) P_k - a_k^2 P_{k-1}. Exact coefficients refer to the rescaled
// variable x in [0, 1]; the double coefficients refer to t = x / zeta_c^2.
struct JacobiData {
  int s = 2;
  int p = 1;
  std::vector<Rational> b_exact;   // b_0..b_{n-1}
  std::vector<Rational> a2_exact;  // a_1^2..a_{n-1}^2
  std::vector<double> b;           // t units
  std::vector<double> a;           // t units, positive roots
  std::vector<Rational> norms;     // <P_k, P_k>, k = 0..n-1

  int size() const { return static_cast<int>(b.size()); }
};

JacobiData jacobi_coefficients(const MomentSequence& mseq, int n);

// Monic orthogonal polynomials (coefficients, lowest degree first) rebuilt from the recurrence.
std::vector<std::vector<Rational>> orthogonal_polynomials(const JacobiData& jac, int count);

// Eigenvalues of the truncated tridiagonal matrix, descending.
std::vector<double> jacobi_spectrum(const JacobiData& jac);

// <e_0, (I - u J_n)^{-1} e_0> by backward continued fraction.
std::complex<double> weyl_function(const JacobiData& jac, std::complex<double> u);

// (1/(pi t)) Im G(1/t + i0) for 1e-12 t_max <= t <= (1 - 1e-3) t_max, t_max = 1/zeta_c^2.
double perron_density(int s, int p, double t, double tol = 1e-12);

struct PerronMass {
  double mass = 0.0;
  double first_moment = 0.0;
  double second_moment = 0.0;
  double error = 0.0;
};

// Integrals of t^n rho(t), n = 0,1,2, over [left_delta t_max, (1 - delta) t_max] with t_max = 1/zeta_c^2.
// left_delta <= 0 means left_delta = delta.
PerronMass perron_mass(int s, int p, double delta, double tol = 1e-7, double left_delta = 0.0);

}  // namespace oneharm
