#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "skop/curve.hpp"
#include "skop/test_form.hpp"

namespace skop {
namespace {

RationalPoly tp(const std::string& s) { return parse_polynomial(s, parameter_variables()); }

TEST(Curve, CuspValidation) {
  EXPECT_THROW(make_cusp(2, 4), Error);
  EXPECT_THROW(make_cusp(3, 2), Error);
  EXPECT_THROW(make_cusp(0, 3), Error);
  EXPECT_TRUE(make_cusp(1, 3).smooth);
  EXPECT_FALSE(make_cusp(2, 3).smooth);
}

TEST(Curve, CuspDefiningPolynomialVanishesOnParametrization) {
  for (const auto& [r, s] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}}) {
    const CurveSpec c = make_cusp(r, s);
    const RationalPoly a = c.defining_polynomial();
    EXPECT_TRUE(a.substitute({c.gamma1, c.gamma2}).is_zero());
  }
}

TEST(Curve, DiscRadiusSolvesNormEquation) {
  // gamma = (t^3, t^2): |t|^6 + |t|^4 = 1, i.e. x^3 + x^2 = 1 for x = rho^2.
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * mid * mid + mid * mid < 1.0 ? lo : hi) = mid;
  }
  const Parametrization p = normalize(make_cusp(2, 3));
  EXPECT_NEAR(p.disc_radius, std::sqrt(lo), 1e-9);
  EXPECT_NEAR(p.disc_radius, 0.8688369618, 1e-9);
}

TEST(Curve, StructureFormOfCusps) {
  for (const auto& [r, s] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}}) {
    const StructureForm w = structure_form(make_cusp(r, s));
    EXPECT_EQ(w.pole_order, (r - 1) * (s - 1));
    EXPECT_TRUE(w.unit_is_constant());
    EXPECT_EQ(w.constant_factor, Complex(0.0, -2.0 * std::numbers::pi));
  }
}

TEST(Curve, StructureFormOfMapMatchesConductor) {
  // The semigroup generated by 3 and 7 has conductor (3-1)(7-1) = 12.
  const CurveSpec c = parse_curve("map:t^3,t^7+t^8");
  EXPECT_EQ(structure_form(c).pole_order, 12);
}

TEST(Curve, ImplicitCuspAgreesWithMonomialCusp) {
  const CurveSpec a = parse_curve("implicit:z1^2 - z2^3");
  const CurveSpec b = make_cusp(2, 3);
  EXPECT_EQ(structure_form(a).pole_order, structure_form(b).pole_order);
  EXPECT_THROW(parse_curve("implicit:z1^2 - z2^3 + z1*z2"), Error);
}

TEST(Curve, EliminationGivesVanishingEquation) {
  const RationalPoly g1 = holomorphic_in_parameter(tp("t^3"));
  const RationalPoly g2 = holomorphic_in_parameter(tp("t^7 + t^8"));
  const auto a = eliminate_monomial_map(g1, g2);
  ASSERT_TRUE(a.has_value());
  EXPECT_FALSE(a->is_zero());
  EXPECT_TRUE(a->substitute({g1, g2}).is_zero());
  EXPECT_FALSE(eliminate_monomial_map(holomorphic_in_parameter(tp("t^2 + t^3")), g2).has_value());
}

TEST(Curve, SemigroupOfCusp) {
  EXPECT_EQ(semigroup_elements(make_cusp(2, 3), 7), (std::vector<int>{0, 2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(semigroup_elements(make_cusp(3, 4), 9), (std::vector<int>{0, 3, 4, 6, 7, 8, 9}));
}

TEST(Curve, NonInjectiveMapRejected) {
  EXPECT_THROW(parse_curve("map:t^2,t^4"), Error);
  EXPECT_THROW(parse_curve("map:t^2+1,t^3"), Error);
}

TEST(Curve, DescriptorParsing) {
  EXPECT_EQ(parse_curve("cusp:2,5").s, 5);
  EXPECT_EQ(parse_curve("cusp:2,3").descriptor(), "cusp:2,3");
  EXPECT_THROW(parse_curve("cusp:2"), Error);
  EXPECT_THROW(parse_curve("cusp:a,b"), Error);
  EXPECT_THROW(parse_curve("ellipse:1"), Error);
}

TEST(Curve, SingularDistance) {
  const CurveSpec c = make_cusp(2, 3);
  const Complex t{0.3, 0.4};
  EXPECT_GT(sing_distance(c, t), 0.0);
  EXPECT_TRUE(std::isinf(sing_distance(make_cusp(1, 2), t)));
}

TEST(TestForms, PullbackOfConjZ1OnCusp) {
  const Parametrization p = normalize(make_cusp(2, 3));
  const RationalPoly f = pullback_polynomial(p, parse_polynomial("conj(z1)*z2", ambient_variables()));
  EXPECT_EQ(f, tp("conj(t)^3*t^2"));
}

TEST(TestForms, BumpAndDerivatives) {
  const TestForm f(tp("t*conj(t)^2"), 0, 1.0);
  const Complex t{0.6, 0.2};
  const double h = 1e-5;
  const auto fd = [&](Complex d) { return (f.value(t + d) - f.value(t - d)) / (2.0 * h); };
  const Complex dx = fd(h), dy = fd(Complex(0, h));
  EXPECT_LT(std::abs(f.dbar(t) - 0.5 * (dx + Complex(0, 1) * dy)), 1e-8);
  EXPECT_LT(std::abs(f.d(t) - 0.5 * (dx - Complex(0, 1) * dy)), 1e-8);
  EXPECT_EQ(f.bump(Complex(0.4, 0.0)), 1.0);
  EXPECT_EQ(f.bump(Complex(1.0, 0.0)), 0.0);
}

}  // namespace
}  // namespace skop
