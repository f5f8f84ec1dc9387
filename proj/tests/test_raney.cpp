#include <gtest/gtest.h>

#include <cmath>

#include "oneharm/error.hpp"
#include "oneharm/maps.hpp"
#include "oneharm/raney.hpp"

using namespace oneharm;

TEST(Raney, CatalanAndFussCatalan) {
  const long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862};
  for (int n = 0; n < 10; ++n) EXPECT_EQ(raney(2, 1, n), catalan[n]) << n;
  const long ternary[] = {1, 1, 3, 12, 55, 273, 1428};
  for (int n = 0; n < 7; ++n) EXPECT_EQ(raney(3, 1, n), ternary[n]) << n;
  EXPECT_EQ(raney(3, 2, 2), 7);
  EXPECT_EQ(raney(5, 3, 0), 1);
}

TEST(Raney, TableAndOracleAgreeWithClosedForm) {
  for (int s : {2, 4, 7})
    for (int p : {1, 3, 9}) {
      const auto table = raney_table(s, p, 80);
      const auto oracle = raney_series_oracle(s, p, 80);
      for (int n = 0; n <= 80; ++n) {
        const BigInt closed = raney(s, p, n);
        ASSERT_EQ(table[n], closed) << s << ' ' << p << ' ' << n;
        ASSERT_EQ(oracle[n], closed) << s << ' ' << p << ' ' << n;
      }
    }
}

TEST(Raney, ExactRatio) {
  for (int n = 0; n < 30; ++n) EXPECT_EQ(raney_ratio(3, 2, n), Rational(raney(3, 2, n + 1)) / Rational(raney(3, 2, n)));
  for (int n = 0; n < 30; ++n)
    EXPECT_NEAR(scaled_raney_ratio(3, 2, n), Rational(raney_ratio(3, 2, n) * Rational(4, 27)).get_d(), 1e-15);
}

TEST(Raney, ConvolutionIdentity) {
  for (int m = 0; m <= 25; ++m) {
    const auto c = convolution_check(4, {2, 3, 1, 4}, m);
    EXPECT_TRUE(c.holds) << m;
    EXPECT_EQ(c.rhs, raney(4, 10, m));
  }
}

TEST(Raney, RejectsInvalidArguments) {
  EXPECT_THROW(raney(1, 1, 3), Error);
  EXPECT_THROW(raney(3, 0, 3), Error);
  EXPECT_THROW(raney(3, 1, -1), Error);
}

// For fixed p the one-term expansion has an O(1/m) error whose constant grows with p.
TEST(RaneyAsymptotics, FixedIndexRegime) {
  for (int s : {2, 3, 5})
    for (int p : {1, 2, 4})
      for (int m : {100, 400, 1600}) {
        const double eps = asymptotic_ratio(s, p, m) - 1.0;
        if (p <= 2) EXPECT_LE(std::fabs(eps) * m, 5.0) << s << ' ' << p << ' ' << m;
        // m eps settles to a constant.
        const double later = (asymptotic_ratio(s, p, 4 * m) - 1.0) * 4 * m;
        EXPECT_NEAR(later / (eps * m), 1.0, 0.1) << s << ' ' << p << ' ' << m;
      }
  // The error shrinks like 1/m.
  const double e1 = asymptotic_ratio(3, 1, 500) - 1.0, e2 = asymptotic_ratio(3, 1, 1000) - 1.0;
  EXPECT_NEAR(e1 / e2, 2.0, 0.05);
}

// When p grows like sqrt(m) a Gaussian factor exp(-p^2 / (2 s (s-1) m)) appears.
TEST(RaneyAsymptotics, GaussianCorrectionForLargeIndex) {
  for (int s : {2, 3})
    for (int p : {60, 100}) {
      const int m = 2000;
      const double gauss = std::exp(-double(p) * p / (2.0 * s * (s - 1) * m));
      EXPECT_NEAR(asymptotic_ratio(s, p, m) / gauss, 1.0, 0.05) << s << ' ' << p;
      EXPECT_LT(asymptotic_ratio(s, p, m), 0.9);
    }
}

TEST(RaneyAsymptotics, Amplitude) {
  const auto a = asymptotic_data(2, 1);
  EXPECT_NEAR(a.amplitude, 2.0 / std::sqrt(4.0 * std::acos(-1.0)), 1e-15);
  EXPECT_DOUBLE_EQ(a.growth, 4.0);
  // Catalan numbers: C_m = 4^m / (sqrt(pi) m^(3/2)) (1 - 9/(8m) + O(1/m^2)).
  EXPECT_NEAR(raney(2, 1, 200).get_d() / asymptotic_value(2, 1, 200), 1.0 - 9.0 / 1600.0, 1e-4);
}

TEST(RaneyAsymptotics, UniformBoundHolds) {
  for (int s : {2, 3})
    for (int p = 1; p <= 60; p += 7)
      for (int m = 1; m <= 300; m += 13) EXPECT_LE(raney(s, p, m).get_d(), uniform_bound(s, p, m)) << s << p << m;
}
