#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oneharm/error.hpp"
#include "oneharm/gram.hpp"
#include "oneharm/maps.hpp"
#include "oneharm/raney.hpp"

using namespace oneharm;

// Direct sum with exact Raney numbers in 256-bit floating point; far below the threshold 300 terms are plenty.
double sigma_oracle(int s, int p, double zeta, int terms = 300) {
  mpf_class acc(0, 256), z2(zeta * zeta, 256), pw(1, 256);
  for (int m = 0; m < terms; ++m) {
    const mpf_class k(p + m * s, 256), r(raney(s, p, m), 256);
    acc += k * k / p * r * r * pw;
    pw *= z2;
  }
  return acc.get_d();
}

TEST(Sigma, KnownValue) { EXPECT_NEAR(sigma_p(2, 1, 0.1), 1.10140853223752, 1e-13); }

TEST(Sigma, MatchesDirectSum) {
  for (int s : {2, 3, 5})
    for (int p : {1, 2, 4}) {
      const double zeta = 0.6 * zeta_c(s);
      EXPECT_NEAR(sigma_p(s, p, zeta) / sigma_oracle(s, p, zeta), 1.0, 1e-12) << s << ' ' << p;
    }
}

TEST(Sigma, DivergesAtThreshold) {
  try {
    sigma_p(3, 1, std::nextafter(zeta_c(3), 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::divergence);
  }
  EXPECT_THROW(sigma_p(3, 1, 0.2), Error);
  // The nearest double below 4/27 is subcritical but out of reach of direct summation.
  try {
    sigma_p(3, 1, zeta_c(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::iteration);
  }
}

TEST(Sigma, GrowsLogarithmically) {
  // sigma(eta) - sigma(eta') ~ slope * (L - L'); slope stays bounded as eta -> 1.
  const double zc = zeta_c(2);
  const double a = sigma_p(2, 1, 0.999 * zc), b = sigma_p(2, 1, 0.9999 * zc), c = sigma_p(2, 1, 0.99999 * zc);
  const double d1 = b - a, d2 = c - b;
  EXPECT_GT(d1, 0.0);
  EXPECT_NEAR(d2 / d1, 1.0, 0.1);
}

TEST(Hessian, ResidueClassesAndSymmetry) {
  const double zeta = 0.3;
  for (int m = 1; m <= 12; ++m)
    for (int n = 1; n <= 12; ++n) {
      const double h = hessian_entry(3, zeta, m, n);
      if ((m - n) % 3 != 0)
        EXPECT_EQ(h, 0.0);
      else
        EXPECT_DOUBLE_EQ(h, hessian_entry(3, zeta, n, m));
    }
  EXPECT_DOUBLE_EQ(hessian_entry(2, 0.2, 1, 1), 1.0);
}

TEST(Hessian, GramRepresentation) {
  for (int s : {2, 3, 4}) {
    const double zeta = 0.5 * zeta_c(s);
    for (int m = 1; m <= 20; ++m)
      for (int n = 1; n <= 20; ++n) EXPECT_TRUE(gram_consistency(s, zeta, m, n, 20)) << s << ' ' << m << ' ' << n;
  }
}

TEST(GramVector, Entries) {
  const auto v = gram_vector(2, 1, 0.2, 4);
  ASSERT_EQ(v.entries.size(), 5u);
  // ((p+ms)/sqrt p) R(m) zeta^m with R = 1, 1, 2, 5, 14.
  EXPECT_DOUBLE_EQ(v.entries[0], 1.0);
  EXPECT_DOUBLE_EQ(v.entries[1], 3.0 * 0.2);
  EXPECT_NEAR(v.entries[3], 7.0 * 5.0 * 0.008, 1e-15);
  EXPECT_EQ(v.index_of(2), 5);
}

TEST(Block, WeightsAndIndices) {
  EXPECT_DOUBLE_EQ(block_index(3, 2, 4), 14.0);
  EXPECT_NEAR(block_weight(2, 1, 1.0, 1), std::pow(3.0, 2.5) * 8.0, 1e-12);
}

TEST(Block, CornerEqualsScaledSigma) {
  for (int s : {2, 3}) {
    const double zeta = 0.9 * zeta_c(s);
    const double w = block_weight(s, 1, 1.0, 0);
    EXPECT_NEAR(block_entry(s, zeta, 1, 1.0, 0, 0, 1e-15), sigma_p(s, 1, zeta, 1e-15) / (w * w), 1e-13);
  }
}

TEST(Block, SynthesisAgreesWithEntrywiseSums) {
  for (int s : {2, 3}) {
    const double zeta = 0.995 * zeta_c(s);
    const auto wb = weighted_block(s, zeta, 1, 1.0, 8, 1e-14);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j <= i; ++j) {
        const double e = block_entry(s, zeta, 1, 1.0, i, j, 1e-14);
        EXPECT_NEAR(wb.matrix(i, j), e, 1e-11 * std::fabs(e)) << s << ' ' << i << ' ' << j;
        EXPECT_EQ(wb.matrix(i, j), wb.matrix(j, i));
      }
  }
}

TEST(Spike, AnalyticConstant) {
  // s = 2, q = 1, beta = 1: Gamma = c_2^2 sum over odd p of p^-4 = c_2^2 pi^4 / 96.
  const auto sv = spike_vector(2, 1, 1.0, 30);
  const double c = spike_constant(2);
  EXPECT_NEAR(sv.gamma_analytic, c * c * std::pow(std::numbers::pi, 4) / 96.0, 1e-13 * sv.gamma_analytic);
  EXPECT_LT(sv.gamma_truncated, sv.gamma_analytic);
  EXPECT_NEAR(sv.entries[1], c * std::pow(3.0, -2.0), 1e-15);
}
