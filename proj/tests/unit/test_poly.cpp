#include <gtest/gtest.h>

#include "skop/poly.hpp"

namespace skop {
namespace {

RationalPoly tp(const std::string& s) { return parse_polynomial(s, parameter_variables()); }
RationalPoly ap(const std::string& s) { return parse_polynomial(s, ambient_variables()); }

TEST(Poly, ParsesRationalCoefficientsAndPowers) {
  const RationalPoly p = tp("3/10*conj(t)^10 + 2*t^2 - 0.5");
  EXPECT_EQ(p.coefficient({0, 10}), Rational(3, 10));
  EXPECT_EQ(p.coefficient({2, 0}), Rational(2));
  EXPECT_EQ(p.coefficient({0, 0}), Rational(-1, 2));
  EXPECT_EQ(p.terms().size(), 3u);
}

TEST(Poly, BinomialExpansion) {
  const RationalPoly p = tp("(t + conj(t))^4");
  const int binom[] = {1, 4, 6, 4, 1};
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(p.coefficient({k, 4 - k}), Rational(binom[k]));
}

TEST(Poly, ConjugationSwapsPartners) {
  EXPECT_EQ(ap("conj(z1*conj(z2)^2 + 3)"), ap("conj(z1)*z2^2 + 3"));
  EXPECT_THROW(parse_polynomial("conj(z1)", holomorphic_ambient_variables()), Error);
}

TEST(Poly, AliasesMapToAmbientSlots) {
  EXPECT_EQ(ap("z*w"), ap("z1*z2"));
  EXPECT_EQ(ap("zeta2"), ap("z2"));
}

TEST(Poly, NegativePowerOfMonomial) {
  const RationalPoly p = tp("(2*t)^(-2)");
  EXPECT_EQ(p.coefficient({-2, 0}), Rational(1, 4));
  EXPECT_THROW(tp("(1 + t)^(-1)"), Error);
}

TEST(Poly, RejectsMalformedInput) {
  for (const char* bad : {"t +", "x", "t^", "(t", "1/0", "t $ 2", ""}) {
    try {
      tp(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
    }
  }
}

TEST(Poly, FormatRoundTrip) {
  for (const char* text : {"3*(conj(t)^9 + conj(t)^10)", "t^2 - 1/3*t*conj(t) + 7", "-t"}) {
    const RationalPoly p = tp(text);
    EXPECT_EQ(tp(format_polynomial(p, parameter_variables())), p) << text;
  }
}

TEST(Poly, DerivativeAndSubstitution) {
  const RationalPoly p = tp("t^3 + 2*t*conj(t)");
  EXPECT_EQ(p.derivative(0), tp("3*t^2 + 2*conj(t)"));
  // p(t^2, conj(t)) composed explicitly.
  const RationalPoly q = p.substitute({tp("t^2"), tp("conj(t)")});
  EXPECT_EQ(q, tp("t^6 + 2*t^2*conj(t)"));
}

TEST(Poly, NumericEvaluationMatchesDirectArithmetic) {
  const RationalPoly p = tp("t^3 - 2*t*conj(t)^2 + 1/2");
  const NumericPoly n(p);
  const Complex t{0.3, -0.7};
  const Complex direct = t * t * t - 2.0 * t * std::conj(t) * std::conj(t) + 0.5;
  EXPECT_LT(std::abs(n(t, std::conj(t)) - direct), 1e-15);
  const NumericPoly laurent(tp("t^(-2) + t"));
  EXPECT_LT(std::abs(laurent(t, std::conj(t)) - (1.0 / (t * t) + t)), 1e-14);
}

TEST(Poly, IntegerPower) {
  const Complex z{0.6, 0.8};
  EXPECT_LT(std::abs(ipow(z, 5) - std::pow(z, 5)), 1e-14);
  EXPECT_LT(std::abs(ipow(z, -3) - 1.0 / (z * z * z)), 1e-14);
  EXPECT_EQ(ipow(z, 0), Complex(1.0));
}

TEST(Poly, TruncationAndDegrees) {
  const RationalPoly p = tp("t^5 + t^2*conj(t)^2 + t");
  EXPECT_EQ(p.total_degree(), 5);
  EXPECT_EQ(p.degree_in(1), 2);
  EXPECT_EQ(p.valuation_in(0), 1);
  EXPECT_EQ(p.truncated(4), tp("t^2*conj(t)^2 + t"));
}

}  // namespace
}  // namespace skop
