#pragma once

#include <vector>

#include "oneharm/linalg.hpp"

namespace oneharm {

// v_{p+ms} = ((p+ms)/sqrt p) R_{s,p}(m) zeta^m for m = 0..m_max; all other indices are zero.
struct GramVector {
  int s = 2;
  int p = 1;
  double zeta = 0.0;
  std::vector<double> entries;

  int index_of(int m) const { return p + m * s; }
};

GramVector gram_vector(int s, int p, double zeta, int m_max);

inline constexpr double default_tol = 1e-12;

// sum_m ((p+ms)^2/p) R^2 zeta^(2m); requires zeta < zeta_c.
double sigma_p(int s, int p, double zeta, double tol = default_tol);

// Finite sum; zero whenever m and n differ mod s. Valid for zeta < zeta_univ.
double hessian_entry(int s, double zeta, int m, int n);

// Sum over p of v^(p)_m v^(p)_n, formed from gram_vector, against hessian_entry.
bool gram_consistency(int s, double zeta, int m, int n, int p_max, double rel_tol = 1e-12);

// p_j = q + j s and w_j = p_j^(3/2+beta) M^(p_j).
double block_index(int s, int q, int j);
double block_weight(int s, int q, double beta, int j);

// Single entry of the weighted block by the offset sum over m.
double block_entry(int s, double zeta, int q, double beta, int j1, int j2, double tol = default_tol);

struct WeightedBlock {
  int s = 2;
  int q = 1;
  double beta = 1.0;
  double zeta = 0.0;
  SymMatrix matrix;
  std::vector<double> weights;
  long terms = 0;  // rows of the synthesis factor actually summed
};

// All entries at once, accumulated as sum_t v(t) v(t)^T over rows of the weighted synthesis factor.
WeightedBlock weighted_block(int s, double zeta, int q, double beta, int n, double tol = default_tol);

struct SpikeVector {
  std::vector<double> entries;  // c_s p_j^(-1-beta)
  double gamma_truncated = 0.0;
  double gamma_analytic = 0.0;
};

double spike_constant(int s);
SpikeVector spike_vector(int s, int q, double beta, int n);

}  // namespace oneharm
