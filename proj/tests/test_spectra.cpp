#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oneharm/error.hpp"
#include "oneharm/gram.hpp"
#include "oneharm/linalg.hpp"
#include "oneharm/maps.hpp"
#include "oneharm/numerics.hpp"
#include "oneharm/spectra.hpp"

using namespace oneharm;

SymMatrix random_symmetric(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist;
  SymMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = dist(gen);
  return a;
}

TEST(SymEig, AgreesWithJacobiRotations) {
  for (int n : {1, 2, 5, 17, 40}) {
    const auto a = random_symmetric(n, 7u + n);
    const auto e = sym_eig(a), r = jacobi_eig(a);
    for (int k = 0; k < n; ++k) {
      EXPECT_NEAR(e.values[k], r.values[k], 1e-11) << n << ' ' << k;
      EXPECT_NEAR(std::fabs(dot(e.vectors[k], r.vectors[k])), 1.0, 1e-9);
    }
    for (int k = 1; k < n; ++k) EXPECT_GE(e.values[k - 1], e.values[k]);
  }
}

TEST(SymEig, EigenpairsAndOrthonormality) {
  const auto a = random_symmetric(25, 3u);
  const auto e = sym_eig(a);
  for (int k = 0; k < 25; ++k) {
    const auto av = multiply(a, e.vectors[k]);
    for (int i = 0; i < 25; ++i) EXPECT_NEAR(av[i], e.values[k] * e.vectors[k][i], 1e-11);
    for (int l = 0; l < 25; ++l) EXPECT_NEAR(dot(e.vectors[k], e.vectors[l]), k == l ? 1.0 : 0.0, 1e-12);
  }
}

TEST(SymEig, RejectsAsymmetricInput) {
  SymMatrix a(3);
  a(0, 1) = 1.0;
  try {
    sym_eig(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::validation);
  }
}

TEST(LogScale, Forms) {
  EXPECT_NEAR(log_scale(0.5 * zeta_c(3), zeta_c(3)), std::log(4.0 / 3.0), 1e-15);
  EXPECT_NEAR(log_scale_ratio(1.0 - 1e-9), -std::log(2e-9 - 1e-18), 1e-6);
  EXPECT_THROW(log_scale_ratio(1.0), Error);
}

TEST(BlockSpectrum, PositiveSemidefinite) {
  const auto bs = block_spectrum({3, 1, 1.0, 12}, 0.99);
  for (double v : bs.eig.values) EXPECT_GT(v, -1e-14);
  EXPECT_NEAR(bs.L, log_scale_ratio(0.99), 1e-15);
}

// The nonzero spectra of V^T V and V V^T coincide.
TEST(BlockSpectrum, Isospectral) {
  const auto chk = isospectral_check({3, 1, 1.0, 8}, 0.9, 400);
  EXPECT_LT(chk.max_rel_diff, 1e-9);
}

TEST(StiffMode, SlopeApproachesTruncatedGamma) {
  const auto fit = stiff_trajectory({3, 1, 1.0, 10}, ratio_grid(0.99, 0.99999, 6));
  EXPECT_NEAR(fit.slope / fit.gamma_truncated, 1.0, 0.02);
  EXPECT_LT(fit.residual, 0.02);
}

TEST(StiffMode, AlignmentImprovesWithL) {
  const BlockParams bp{3, 1, 1.0, 12};
  const double a1 = eigvec_alignment(bp, 0.99).value, a2 = eigvec_alignment(bp, 0.9999).value;
  EXPECT_GT(a2, a1);
  EXPECT_GT(a2, 0.999);
}

TEST(SoftSpectrum, BoundedAndCompressedLimitStable) {
  const BlockParams bp{3, 1, 1.0, 12};
  const auto a = soft_spectrum(bp, 0.999, 4), b = soft_spectrum(bp, 0.9999, 4);
  ASSERT_EQ(a.mu.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_LT(b.mu[k], block_spectrum(bp, 0.9999).eig.values[0]);
    EXPECT_NEAR(b.compressed[k] / a.compressed[k], 1.0, 0.05);
  }
}

TEST(Toeplitz, RemovalScalesLikeDistance) {
  const auto pts = toeplitz_removal_check({3, 1, 1.0, 4000}, {0.99, 0.999});
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_NEAR(pts[0].hs / pts[1].hs, 10.0, 1.5);
  EXPECT_LT(pts[1].scaled(), pts[0].scaled());
}

TEST(RankOne, RemainderStaysBounded) {
  const BlockParams bp{3, 1, 1.0, 12};
  const double n1 = operator_norm(rank_one_remainder(bp, 0.999));
  const double n2 = operator_norm(rank_one_remainder(bp, 0.99999));
  EXPECT_NEAR(n2 / n1, 1.0, 0.1);
}

TEST(Nodal, Counts) {
  EXPECT_EQ(nodal_count({1.0, 2.0, 3.0}), 0);
  EXPECT_EQ(nodal_count({1.0, -1.0, 1.0}), 2);
  EXPECT_EQ(nodal_count({1.0, 1e-14, -1.0}), 1);
  EXPECT_THROW(nodal_count({0.0, 0.0}), Error);
}

TEST(Numerics, LeastSquaresRecoversPolynomial) {
  std::vector<std::vector<double>> design;
  std::vector<double> rhs;
  for (double x : linspace(-1.0, 2.0, 11)) {
    design.push_back({1.0, x, x * x});
    rhs.push_back(0.5 - 2.0 * x + 3.0 * x * x);
  }
  const auto c = least_squares(design, rhs);
  EXPECT_NEAR(c[0], 0.5, 1e-13);
  EXPECT_NEAR(c[1], -2.0, 1e-13);
  EXPECT_NEAR(c[2], 3.0, 1e-13);
}

TEST(Numerics, AdaptiveQuadrature) {
  const auto r = integrate([](double x) { return std::sin(x); }, 0.0, std::acos(-1.0), 0.0, 1e-12, 30);
  EXPECT_NEAR(r.value, 2.0, 1e-12);
  const auto s = integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0, 0.0, 1e-9, 50);
  EXPECT_NEAR(s.value, 2.0 - 2e-6, 1e-7);
}

TEST(Numerics, ComplexOdeSegment) {
  // y' = i y from 0 to 1 + i.
  auto f = [](std::complex<double>, const ComplexVector& y, ComplexVector& dy) { dy[0] = std::complex<double>(0, 1) * y[0]; };
  const auto y = integrate_segment(f, 0.0, {1.0, 1.0}, {1.0}, OdeOptions{});
  EXPECT_LT(std::abs(y[0] - std::exp(std::complex<double>(0, 1) * std::complex<double>(1, 1))), 1e-11);
}

TEST(Numerics, Grids) {
  const auto g = ratio_grid(0.9, 0.999, 3);
  EXPECT_NEAR(g[0], 0.9, 1e-15);
  EXPECT_NEAR(g[1], 0.99, 1e-15);
  EXPECT_NEAR(g[2], 0.999, 1e-15);
  const auto l = geomspace(1.0, 100.0, 3);
  EXPECT_NEAR(l[1], 10.0, 1e-13);
}
