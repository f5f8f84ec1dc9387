#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oneharm/error.hpp"
#include "oneharm/maps.hpp"
#include "oneharm/raney.hpp"

using namespace oneharm;

TEST(Thresholds, OrderThreeExact) {
  const auto th = thresholds(3);
  EXPECT_EQ(th.zeta_c, Rational(4, 27));
  EXPECT_EQ(th.zeta_univ, Rational(1, 2));
  EXPECT_EQ(th.ratio, Rational(8, 27));
  EXPECT_DOUBLE_EQ(zeta_c(2), 0.25);
  EXPECT_DOUBLE_EQ(zeta_univ(2), 1.0);
}

TEST(Thresholds, AnalyticBelowGeometricForAllOrders) {
  for (int s = 2; s <= 64; ++s) {
    const auto th = thresholds(s);
    EXPECT_LT(th.zeta_c, th.zeta_univ) << s;
    // (s-1)^(s-1)/s^s through exp/log; its rounding grows like s log s.
    EXPECT_NEAR(zeta_c(s), std::exp((s - 1) * std::log(s - 1.0) - s * std::log(double(s))), 1e-12 * zeta_c(s)) << s;
  }
}

TEST(Thresholds, RejectsBadOrders) {
  for (int s : {-1, 0, 1, 65}) {
    try {
      thresholds(s);
      FAIL() << "accepted s=" << s;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::domain);
    }
  }
}

// U = sum_n FC_n t^n with Fuss-Catalan coefficients, summed directly inside the disc.
TEST(SolveU, MatchesFussCatalanSeries) {
  for (int s : {2, 3, 5}) {
    const double zc = zeta_c(s);
    for (Complex t : {Complex(0.3 * zc, 0.0), Complex(-0.5 * zc, 0.2 * zc), Complex(0.1 * zc, -0.6 * zc)}) {
      const auto fc = raney_table(s, 1, 200);
      Complex acc = 0.0, pw = 1.0;
      for (int n = 0; n <= 200; ++n) {
        acc += fc[n].get_d() * pw;
        pw *= t;
      }
      EXPECT_LT(std::abs(solve_u_of_t(s, t) - acc), 1e-12) << "s=" << s << " t=" << t;
    }
  }
}

TEST(SolveU, SatisfiesFunctionalEquation) {
  const MapConfig cfg{3, 0.1};
  for (Complex x : {Complex(0.5, 0.1), Complex(-0.3, 0.7), Complex(0.9, 0.0)}) {
    const Complex u = solve_u(cfg, x);
    EXPECT_LT(std::abs(u - 1.0 - cfg.zeta * std::pow(x, 3) * std::pow(u, 3)), 1e-13);
  }
}

TEST(SolveU, BranchAmbiguityOnTheCut) {
  try {
    solve_u_of_t(3, Complex(2.0 * zeta_c(3), 0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::branch_ambiguity);
  }
}

TEST(BranchPoint, LocalSquareRootExpansion) {
  for (int s : {2, 3, 4}) {
    const auto bp = branch_point_data(s);
    EXPECT_EQ(bp.u_c, Rational(s, s - 1));
    EXPECT_NEAR(bp.kappa * bp.kappa, bp.kappa_sq.get_d(), 1e-14);
    // Remainder after the square-root term is O(eps).
    const double e1 = local_expansion_check(s, 1e-4), e2 = local_expansion_check(s, 1e-6);
    EXPECT_LT(e1, 1e-3);
    EXPECT_NEAR(e1 / e2, 100.0, 10.0);
  }
}

TEST(Univalence, ExactThresholdDecision) {
  EXPECT_TRUE(is_univalent({3, 0.4}).univalent);
  EXPECT_FALSE(is_univalent({3, 0.6}).univalent);
  const auto at = is_univalent({3, 0.5});
  EXPECT_TRUE(at.critical);
  EXPECT_EQ(at.critical_value, Rational(1));
  for (double z : {0.1, 0.3, 0.49, 0.51, 0.8}) EXPECT_TRUE(is_univalent({3, z}).critical_points_agree) << z;
}

TEST(Univalence, MarginSignFollowsThreshold) {
  for (int s = 2; s <= 6; ++s) {
    const double zu = zeta_univ(s);
    EXPECT_GT(boundary_injectivity_margin({s, 0.9 * zu}, 20000), 0.0) << s;
    EXPECT_LT(boundary_injectivity_margin({s, 1.1 * zu}, 20000), 0.0) << s;
  }
}

// Below the threshold the boundary curve has no self-intersections: check pairwise distances of a sampled trace.
TEST(Univalence, BoundaryTraceSeparated) {
  const MapConfig cfg{4, 0.25};
  std::vector<double> angles;
  for (int k = 0; k < 256; ++k) angles.push_back(2.0 * std::numbers::pi * k / 256);
  const auto pts = boundary_trace(cfg, angles);
  double closest = 1e300;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) closest = std::min(closest, std::abs(pts[i] - pts[j]));
  EXPECT_GT(closest, 1e-3);
}
