#pragma once

#include <vector>

#include "oneharm/gram.hpp"
#include "oneharm/linalg.hpp"

namespace oneharm {

// log(1/(1 - zeta^2/zeta_c^2)); requires 0 <= zeta < zeta_c.
double log_scale(double zeta, double zeta_c);
// Same quantity in terms of eta = zeta/zeta_c, accurate as eta -> 1.
double log_scale_ratio(double eta);

struct BlockParams {
  int s = 3;
  int q = 1;
  double beta = 1.0;
  int n = 30;
};

struct BlockSpectrum {
  double eta = 0.0;
  double zeta = 0.0;
  double L = 0.0;
  EigenDecomposition eig;
};

// Eigen-decomposition of the weighted block at zeta = eta zeta_c. Results are memoized.
BlockSpectrum block_spectrum(const BlockParams& bp, double eta);

struct StiffFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // rms residual of the fitted points over the range of mu_1 they span
  double gamma_truncated = 0.0;
  std::vector<double> L_values;
  std::vector<double> mu1;
  std::size_t fitted = 0;  // trailing points used
};

// Affine fit of mu_1 against L over the points whose L lies in the upper half of the L-range.
StiffFit stiff_trajectory(const BlockParams& bp, const std::vector<double>& eta_grid);

struct Alignment {
  double value = 0.0;  // |<psi_1, d_hat>|
  bool degenerate = false;
};

Alignment eigvec_alignment(const BlockParams& bp, double eta);

struct SoftSpectrum {
  std::vector<double> mu;          // mu_2..mu_k of the block
  std::vector<double> compressed;  // eigenvalues of the remainder compressed to the spike complement
  std::vector<std::vector<double>> compressed_vectors;  // in the original coordinates
};

SoftSpectrum soft_spectrum(const BlockParams& bp, double eta, int k);

struct ToeplitzPoint {
  double eta = 0.0;
  double L = 0.0;
  double hs = 0.0;  // ||K_eta - K_1||_HS
  double scaled() const { return L * hs; }
};

std::vector<ToeplitzPoint> toeplitz_removal_check(const BlockParams& bp, const std::vector<double>& eta_grid);

// G(zeta) - L(zeta) d d^T with the truncated spike vector.
SymMatrix rank_one_remainder(const BlockParams& bp, double eta);

// Strict sign changes, skipping entries below 1e-12 of the largest magnitude.
int nodal_count(const std::vector<double>& v);

struct IsospectralCheck {
  std::vector<double> gram_side;
  std::vector<double> outer_side;
  double max_rel_diff = 0.0;
};

// Builds the row-truncated synthesis factor V explicitly and compares spectra of V^T V and V V^T.
IsospectralCheck isospectral_check(const BlockParams& bp, double eta, int rows);

}  // namespace oneharm
