#include <gtest/gtest.h>

#include <cmath>

#include "oneharm/continuation.hpp"
#include "oneharm/error.hpp"
#include "oneharm/jacobi.hpp"
#include "oneharm/maps.hpp"
#include "oneharm/raney.hpp"

using namespace oneharm;

namespace {

double zc2(int s) { return zeta_c(s) * zeta_c(s); }

// Exact sum_i c_i m_{i+shift} for a polynomial with coefficients c.
Rational pair_with_moments(const std::vector<Rational>& c, const MomentSequence& m, int shift) {
  Rational acc = 0;
  for (std::size_t i = 0; i < c.size(); ++i) acc += c[i] * m.values.at(i + shift);
  return acc;
}

}  // namespace

TEST(Moments, SquaredScaledRaney) {
  const auto m = moments(3, 2, 10);
  ASSERT_EQ(m.values.size(), 11u);
  for (int n = 0; n <= 10; ++n) {
    const Rational r(raney(3, 2, n));
    EXPECT_EQ(m.values[n], r * r * rational_pow(Rational(4, 27), 2 * n));
  }
}

TEST(Hankel, MinorsPositiveForSmallIndex) {
  for (int s : {2, 3, 5})
    for (int p = 1; p <= s; ++p) {
      const auto rep = hankel_minors(moments(s, p, 20), 8);
      EXPECT_TRUE(rep.positive) << s << ' ' << p;
      for (const auto& d : rep.minors) EXPECT_GT(sgn(d), 0);
    }
}

// With p well above s the representing density changes sign and positivity is lost.
TEST(Hankel, SignedMeasureForLargeIndex) { EXPECT_FALSE(hankel_positivity(moments(2, 4, 20), 8)); }

TEST(Jacobi, CatalanSquaredCoefficients) {
  // s = 2, p = 1 in the rescaled variable: b_0 = m_1 / m_0 = 1/16, a_1^2 = m_2 - m_1^2 = 4/256 - 1/256.
  const auto jac = jacobi_coefficients(moments(2, 1, 10), 5);
  EXPECT_EQ(jac.b_exact[0], Rational(1, 16));
  EXPECT_EQ(jac.a2_exact[0], Rational(3, 256));
  EXPECT_NEAR(jac.b[0], 1.0, 1e-15);
}

TEST(Jacobi, OrthogonalityAgainstMoments) {
  const auto m = moments(3, 1, 30);
  const auto jac = jacobi_coefficients(m, 8);
  for (Rational a2 : jac.a2_exact) EXPECT_GT(sgn(a2), 0);
  const auto polys = orthogonal_polynomials(jac, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < i; ++j) {
      // <P_i, x^j> = 0 for j < i.
      EXPECT_EQ(pair_with_moments(polys[i], m, j), 0) << i << ' ' << j;
    }
  for (int i = 0; i < 8; ++i) EXPECT_EQ(pair_with_moments(polys[i], m, i), jac.norms[i]);
}

TEST(Jacobi, SpectrumInsideSupport) {
  const auto jac = jacobi_coefficients(moments(3, 2, 40), 16);
  const double t_max = 1.0 / zc2(3);
  for (double x : jacobi_spectrum(jac)) {
    EXPECT_GT(x, 0.0);
    EXPECT_LT(x, t_max);
  }
}

TEST(Weyl, MatchesSeriesInsideDisc) {
  const auto jac = jacobi_coefficients(moments(2, 1, 40), 20);
  for (double r : {0.1, -0.4}) {
    const double u = r * zc2(2);
    EXPECT_NEAR(weyl_function(jac, u).real(), gp_series(2, 1, u), 1e-10) << r;
  }
}

TEST(Weyl, ConvergesGeometricallyInDepth) {
  // 3F2(1/2,1/2,1;2,2;-5) to 21 digits.
  const auto m = moments(2, 1, 60);
  const double u = -5.0 * zc2(2);
  const double exact = 0.836988662860295624900;
  const double e8 = std::fabs(weyl_function(jacobi_coefficients(m, 8), u).real() - exact);
  const double e16 = std::fabs(weyl_function(jacobi_coefficients(m, 16), u).real() - exact);
  EXPECT_LT(e16, 1e-3 * e8);
}

TEST(Weyl, OffAxisMatchesContinuation) {
  const auto jac = jacobi_coefficients(moments(2, 1, 80), 40);
  const Complex u = Complex(-1.0, 1.0) * zc2(2);
  EXPECT_LT(std::abs(weyl_function(jac, u) - gp_continue(2, 1, u, Side::none).value), 1e-8);
}

TEST(Perron, DensityPositiveForSmallIndex) {
  for (int s : {2, 3})
    for (int p = 1; p <= s; ++p) {
      const double t_max = 1.0 / zc2(s);
      for (int k = 1; k <= 50; ++k) {
        const double t = t_max * k / 51.0;
        EXPECT_GT(perron_density(s, p, t), 0.0) << s << ' ' << p << ' ' << t;
      }
    }
}

TEST(Perron, RejectsOutsideWindow) {
  EXPECT_THROW(perron_density(2, 1, 16.0), Error);
  EXPECT_THROW(perron_density(2, 1, 0.0), Error);
}

// Catalan squared: total mass 1, first moment R(1)^2 = 1, second moment R(2)^2 = 4 in t units.
TEST(Perron, MassAndLowMoments) {
  const auto pm = perron_mass(2, 1, 1e-3, 1e-7, 1e-10);
  EXPECT_NEAR(pm.mass, 1.0, 1e-3);
  EXPECT_NEAR(pm.first_moment, 1.0, 0.02);
  EXPECT_NEAR(pm.second_moment, 4.0, 0.02 * 4.0);
}

TEST(Perron, VanishesQuadraticallyAtRightEdge) {
  // The w^2 log w singularity of G gives rho(t) ~ c (t_max - t)^2 near the edge.
  const double t_max = 1.0 / zc2(3);
  const double d1 = 1e-2, d2 = 2e-3;
  const double r1 = perron_density(3, 1, t_max * (1 - d1)), r2 = perron_density(3, 1, t_max * (1 - d2));
  EXPECT_NEAR(std::log(r1 / r2) / std::log(d1 / d2), 2.0, 0.05);
}
