#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oneharm/continuation.hpp"
#include "oneharm/error.hpp"
#include "oneharm/gram.hpp"
#include "oneharm/maps.hpp"
#include "oneharm/numerics.hpp"
#include "oneharm/raney.hpp"

using namespace oneharm;

namespace {

double zc2(int s) { return zeta_c(s) * zeta_c(s); }

// Reference values of 3F2(1/2,1/2,1;2,2;xi) (s=2, p=1) and 4F3(1/3,1/3,2/3,2/3;3/2,3/2,1;xi) (s=3, p=1)
// from 30-digit arbitrary-precision hypergeometric evaluation, taken on the upper side of the cut.
struct Reference {
  int s;
  Complex xi;
  Complex value;
};
const Reference references[] = {
    {2, {1.5, 0.0}, {1.17162931769225850954, 0.06077676494750184658}},
    {2, {-2.0, 0.0}, {0.91186907115338262420, 0.0}},
    {2, {3.0, 2.0}, {1.02193320912823880002, 0.23980072921836346815}},
    {3, {-1.0, 0.0}, {0.98132713445443501485, 0.0}},
    {3, {2.0, 0.0}, {1.06728890817095089564, 0.03419556168580606489}},
    {3, {0.3, 0.0}, {1.00702246724996443573, 0.0}},
};

}  // namespace

TEST(HypParams, ExcessIsTwo) {
  for (int s = 2; s <= 9; ++s)
    for (int p = 1; p <= 9; ++p) {
      const auto hp = hyp_params(s, p);
      EXPECT_EQ(hp.excess, 2) << s << ' ' << p;
      EXPECT_EQ(hp.upper.size(), std::size_t(2 * s));
      EXPECT_EQ(hp.lower.size(), std::size_t(2 * s - 1));
    }
}

TEST(HypParams, CoefficientsAreScaledSquaredRaney) {
  for (int s : {2, 3, 4})
    for (int p : {1, 2, 5}) {
      const auto a = hypergeometric_coefficients(hyp_params(s, p), 25);
      const Rational zc = thresholds(s).zeta_c;
      for (int m = 0; m <= 25; ++m) {
        const Rational r(raney(s, p, m));
        EXPECT_EQ(a[m], r * r * rational_pow(zc, 2 * m)) << s << ' ' << p << ' ' << m;
      }
    }
}

TEST(Series, ComplexAndRealAgree) {
  const double u = 0.4 * zc2(3);
  EXPECT_NEAR(gp_series(3, 2, u), gp_series(3, 2, Complex(u, 0.0)).real(), 1e-15);
  EXPECT_THROW(gp_series(3, 2, 0.99 * zc2(3)), Error);
}

TEST(Series, ThetaDerivatives) {
  // theta G = u G'(u), compared with a central difference.
  const int s = 2, p = 1;
  const Complex xi(0.3, 0.1);
  const auto th = theta_series(s, p, xi, 3);
  const double h = 1e-5;
  const Complex d = (gp_series(s, p, (xi + h) * zc2(s)) - gp_series(s, p, (xi - h) * zc2(s))) / (2.0 * h);
  EXPECT_LT(std::abs(th[1] - xi * d), 1e-9);
}

TEST(Continuation, ReproducesSeriesInsideDisc) {
  for (int s : {2, 3})
    for (int p : {1, 2}) {
      const Complex u = Complex(0.6, 0.3) * zc2(s);
      EXPECT_LT(std::abs(gp_continue(s, p, u, Side::none).value - gp_series(s, p, u)), 1e-12);
    }
}

TEST(Continuation, MatchesHypergeometricReference) {
  for (const auto& ref : references) {
    const Side side = ref.xi.imag() == 0.0 && ref.xi.real() > 1.0 ? Side::above : Side::none;
    const auto st = gp_continue(ref.s, 1, ref.xi * zc2(ref.s), side);
    EXPECT_LT(std::abs(st.value - ref.value), 1e-10) << ref.s << ' ' << ref.xi;
  }
}

TEST(Continuation, ConjugateSidesOfTheCut) {
  const double u = 3.0 * zc2(3);
  const auto a = gp_continue(3, 2, u, Side::above), b = gp_continue(3, 2, u, Side::below);
  EXPECT_LT(std::abs(a.value - std::conj(b.value)), 1e-12);
  EXPECT_GT(std::fabs(a.value.imag()), 1e-3);
}

TEST(Continuation, PathErrors) {
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::usage;
  };
  EXPECT_EQ(kind_of([] { gp_continue(2, 1, zc2(2) * 1.00001, Side::above); }), ErrorKind::path);
  EXPECT_EQ(kind_of([] { gp_continue(2, 1, zc2(2) * 2.0, Side::none); }), ErrorKind::domain);
  EXPECT_EQ(kind_of([] { gp_continue(2, 1, 0.0, Side::none); }), ErrorKind::path);
}

TEST(Continuation, ExplicitPathAgrees) {
  const double s2 = zc2(2);
  const std::vector<Complex> path{0.5 * s2, Complex(0.5, -0.5) * s2, Complex(2.0, -0.5) * s2, 2.0 * s2};
  const auto a = gp_continue_path(2, 1, path);
  const auto b = gp_continue(2, 1, 2.0 * s2, Side::below);
  EXPECT_LT(std::abs(a.value - b.value), 1e-11);
}

TEST(SigmaCont, EqualsSubcriticalGramWeight) {
  for (int s : {2, 3})
    for (int p : {1, 2, 3}) {
      const double zeta = 0.7 * zeta_c(s);
      const Complex sc = sigma_cont(s, p, zeta * zeta, Side::none);
      EXPECT_NEAR(sc.real() / sigma_p(s, p, zeta), 1.0, 1e-10) << s << ' ' << p;
      EXPECT_NEAR(sc.imag(), 0.0, 1e-10);
    }
}

TEST(ClosedForms, ResonantAndEdgeConstants) {
  EXPECT_EQ(B_closed_form(2, 1).coefficient, Rational(-1, 2));
  EXPECT_EQ(B_closed_form(3, 1).coefficient, Rational(-3, 32));
  EXPECT_EQ(edge_density_closed_exact(2, 1).coefficient, Rational(4));
  EXPECT_EQ(edge_density_closed_exact(3, 1).coefficient, Rational(27, 16));
  EXPECT_NEAR(edge_density_closed(2, 1), 4.0 / std::numbers::pi, 1e-15);
}

TEST(Density, SignConventionAndSymmetry) {
  // rho = (1/pi) Im sigma(u + i0); positive near the edge.
  const double u = 1.2 * zc2(2);
  const auto dv = disc_density(2, 1, u);
  const Complex sig = sigma_cont(2, 1, u, Side::above);
  EXPECT_NEAR(dv.rho, sig.imag() / std::numbers::pi, 1e-11);
  EXPECT_LT(std::fabs(dv.imag_residue), 1e-10);
  EXPECT_GT(dv.rho, 0.0);
}

TEST(Density, EdgeExtrapolation) {
  for (auto [s, p] : {std::pair{2, 1}, std::pair{3, 2}})
    EXPECT_NEAR(edge_density_extrapolated(s, p) / edge_density_closed(s, p), 1.0, 1e-6);
}

TEST(Density, ApproachesEdgeValue) {
  const double near = disc_density_rho(3, 1, zc2(3) * (1.0 + 2e-4));
  EXPECT_NEAR(near / edge_density_closed(3, 1), 1.0, 0.01);
}

TEST(ResonantFit, DoublePrecisionWithinFivePercent) {
  const auto rc = resonant_fit(2, 1, geomspace(1e-4, 3e-3, 16), Precision::double_precision);
  EXPECT_NEAR(rc.B_fit / rc.B_at_branch, 1.0, 0.05);
  // G(zeta_c^2) = 3F2(1/2,1/2,1;2,2;1) = 16/pi - 4 for the squared Catalan numbers.
  EXPECT_NEAR(rc.A_fit[0], 16.0 / std::numbers::pi - 4.0, 1e-6);
}

TEST(ResonantFit, GridValidation) {
  EXPECT_THROW(resonant_fit(2, 1, {1e-4, 2e-4, 3e-4}), Error);
  EXPECT_THROW(resonant_fit(2, 1, geomspace(2e-4, 1e-3, 8)), Error);
}
