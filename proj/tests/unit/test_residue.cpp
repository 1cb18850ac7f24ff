#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "skop/residue.hpp"

namespace skop {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kTwoPiI{0.0, 2.0 * kPi};

RationalPoly tp(const std::string& s) { return parse_polynomial(s, parameter_variables()); }

RegularizationSchedule schedule() { return {.delta_max = 0.1, .ratio = 0.5, .count = 8, .extrapolation_order = 2}; }

TEST(Residue, PowerPicksTaylorCoefficient) {
  // dbar(1/tau^m) against tau^(m-1) dtau gives 2 pi i.
  for (int m = 1; m <= 4; ++m) {
    const TestForm psi(tp("t^" + std::to_string(m - 1) + " + conj(t) + t^" + std::to_string(m + 1)), 0, 1.0);
    const CurrentValue v = residue_pair(m, psi, schedule(), QuadratureSpec{});
    EXPECT_LT(std::abs(v.value - kTwoPiI), 1e-8) << m;
  }
}

TEST(Residue, MixedTermsDoNotContribute) {
  const TestForm psi(tp("t*conj(t) + conj(t)^2 + 7*t^3"), 0, 1.0);
  EXPECT_LT(std::abs(residue_pair(2, psi, schedule(), QuadratureSpec{}).value), 1e-9);
  EXPECT_LT(std::abs(residue_oracle(2, psi)), 1e-15);
  EXPECT_LT(std::abs(residue_oracle(4, psi) - 7.0 * kTwoPiI), 1e-12);
}

double bump_moment(const TestForm& f, int power) {
  // Composite Simpson on [0, R] of r^power * bump(r).
  const int n = 4000;
  const double R = f.support_radius();
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double r = R * i / n;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::pow(r, power) * f.bump(Complex(r, 0.0));
  }
  return s * R / (3.0 * n);
}

TEST(Residue, PrincipalValueAgainstRadialOracle) {
  // <1/tau, tau dA> = 2 pi * integral of r bump(r) dr.
  const TestForm psi(tp("t"), 0, 1.0);
  const double expected = 2.0 * kPi * bump_moment(psi, 1);
  EXPECT_LT(std::abs(pv_pair(1, psi, schedule(), QuadratureSpec{}).value - expected), 1e-7);
  EXPECT_LT(std::abs(pv_direct(1, psi, QuadratureSpec{}).value - expected), 1e-7);
  // <1/tau^2, tau^2 + conj(tau) dA> only sees tau^2.
  const TestForm psi2(tp("t^2 + conj(t)"), 0, 1.0);
  EXPECT_LT(std::abs(pv_pair(2, psi2, schedule(), QuadratureSpec{}).value - expected), 1e-7);
}

TEST(Residue, ColeffHerreraProduct) {
  AmbientTestFunction psi;
  psi.support_radius = 1.0;
  psi.polynomial = parse_polynomial("1 + z1*z2 + conj(z1)", ambient_variables()).cast<Complex>();
  const CurrentValue v = ch_product_pair(1, 1, psi, schedule());
  EXPECT_LT(std::abs(v.value - kTwoPiI * kTwoPiI), 1e-6);
  EXPECT_LT(std::abs(ch_oracle(1, 1, psi) - kTwoPiI * kTwoPiI), 1e-12);
  const CurrentValue w = ch_product_pair(2, 2, psi, schedule());
  EXPECT_LT(std::abs(w.value - kTwoPiI * kTwoPiI), 1e-6);
}

TEST(Residue, StandardExtensionProperty) {
  const TestForm psi(tp("1 + t + conj(t)^2 + t^2*conj(t)"), 0, 1.0);
  for (int m = 1; m <= 3; ++m) {
    EXPECT_LT(std::abs(sep_restrict(m, psi, schedule(), QuadratureSpec{}).value), 1e-6) << m;
    // The residue current lives at the origin, so restricting to it changes nothing.
    EXPECT_LT(std::abs(sep_restrict_residue(m, psi, schedule(), QuadratureSpec{}).value - residue_oracle(m, psi)), 1e-6)
        << m;
  }
}

TEST(Residue, RejectsBadArguments) {
  const TestForm psi(tp("1"), 0, 1.0);
  EXPECT_THROW(residue_pair(0, psi, schedule(), QuadratureSpec{}), Error);
  RegularizationSchedule s = schedule();
  s.count = 2;
  EXPECT_THROW(residue_pair(1, psi, s, QuadratureSpec{}), Error);
}

}  // namespace
}  // namespace skop
