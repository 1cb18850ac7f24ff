#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "skop/regularization.hpp"

namespace skop {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Cutoff, ProfileShape) {
  const Cutoff c;
  EXPECT_EQ(c.profile(0.5), 0.0);
  EXPECT_EQ(c.profile(1.0), 0.0);
  EXPECT_EQ(c.profile(2.0), 1.0);
  EXPECT_EQ(c.profile(3.0), 1.0);
  EXPECT_NEAR(c.profile(1.5), 0.5, 1e-15);
  double prev = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = c.profile(1.0 + i / 100.0);
    EXPECT_GE(v, prev - 1e-15);
    prev = v;
  }
}

TEST(Cutoff, DerivativeMatchesFiniteDifference) {
  const Cutoff c;
  for (double x : {1.1, 1.37, 1.5, 1.83, 1.99}) {
    const double h = 1e-6;
    EXPECT_NEAR(c.derivative(x), (c.profile(x + h) - c.profile(x - h)) / (2 * h), 1e-7) << x;
  }
  // Smooth at the knots: the derivative vanishes there.
  EXPECT_NEAR(c.derivative(1.0), 0.0, 1e-15);
  EXPECT_NEAR(c.derivative(2.0), 0.0, 1e-15);
}

TEST(Cutoff, DbarOfRadialCutoff) {
  const Cutoff c;
  const double delta = 0.1;
  const Complex tau{0.09, 0.1};
  const double h = 1e-7;
  const auto f = [&](Complex z) { return cutoff_eval(c, delta, z).value; };
  const Complex fd = 0.5 * (Complex((f(tau + h) - f(tau - h)) / (2 * h), 0.0) +
                            Complex(0, 1) * ((f(tau + Complex(0, h)) - f(tau - Complex(0, h))) / (2 * h)));
  EXPECT_LT(std::abs(cutoff_eval(c, delta, tau).dbar_part - fd), 1e-6);
  EXPECT_EQ(cutoff_eval(c, delta, Complex(0.05, 0.0)).value, 0.0);
  EXPECT_EQ(cutoff_eval(c, delta, Complex(0.3, 0.0)).value, 1.0);
}

TEST(Schedule, DeltasAndValidation) {
  RegularizationSchedule s{.delta_max = 0.2, .ratio = 0.5, .count = 4, .extrapolation_order = 2};
  const auto d = s.deltas();
  ASSERT_EQ(d.size(), 4u);
  EXPECT_DOUBLE_EQ(d[3], 0.025);
  s.ratio = 1.0;
  EXPECT_THROW(s.validate(), Error);
  s.ratio = 0.5;
  s.count = 3;
  EXPECT_THROW(s.validate(), Error);
  EXPECT_NEAR(RegularizationSchedule::for_disc(0.5).delta_max, 0.1, 1e-15);
}

TEST(Quadrature, GaussLegendreIntegratesPolynomials) {
  std::vector<double> x, w;
  gauss_legendre(6, x, w);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 10);
  EXPECT_NEAR(s, 2.0 / 11.0, 1e-14);
}

TEST(Quadrature, AnnulusRuleArea) {
  const auto nodes = annulus_rule(0.2, 0.7, 8, 32);
  Complex s{};
  for (const auto& n : nodes) s += n.weight * std::norm(n.point);
  EXPECT_NEAR(s.real(), kPi * (std::pow(0.7, 4) - std::pow(0.2, 4)) / 2.0, 1e-13);
}

TEST(PvIntegrate, SmoothRadialIntegrand) {
  DiscIntegrand f{.density = [](Complex z) { return Complex(std::norm(z), 0.0); }, .outer_radius = 1.0};
  const CurrentValue v = pv_integrate(f, QuadratureSpec{}, {});
  EXPECT_NEAR(v.value.real(), kPi / 2.0, 1e-10);
  EXPECT_NEAR(v.value.imag(), 0.0, 1e-12);
}

TEST(PvIntegrate, CauchySingularityAwayFromOrigin) {
  // Integral over the unit disc of dA / (tau - p) is -pi conj(p) for |p| < 1.
  const Complex p{0.3, 0.25};
  DiscIntegrand f{.density = [&](Complex z) { return 1.0 / (z - p); }, .outer_radius = 1.0};
  const Complex sing[] = {p};
  const CurrentValue v = pv_integrate(f, QuadratureSpec{}, sing);
  EXPECT_LT(std::abs(v.value + kPi * std::conj(p)), 1e-8);
}

TEST(PvIntegrate, PrincipalValueAtOrigin) {
  // conj(tau) / tau^2 has vanishing angular mean on every circle.
  DiscIntegrand f{.density = [](Complex z) { return 1.0 / (z * z) + 1.0; }, .outer_radius = 1.0};
  const Complex sing[] = {Complex{}};
  const CurrentValue v = pv_integrate(f, QuadratureSpec{}, sing);
  EXPECT_LT(std::abs(v.value - kPi), 1e-8);
}

TEST(PvIntegrate, NonIntegrableRadialSingularityThrows) {
  DiscIntegrand f{.density = [](Complex z) { return Complex(1.0 / std::norm(z), 0.0); }, .outer_radius = 1.0};
  const Complex sing[] = {Complex{}};
  try {
    pv_integrate(f, QuadratureSpec{}, sing);
    FAIL() << "expected NonConvergent";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonConvergent);
  }
}

TEST(Extrapolate, ExactForLowOrderPolynomials) {
  std::vector<TracePoint> trace;
  for (int j = 0; j < 6; ++j) {
    const double d = 0.1 * std::pow(0.5, j);
    trace.push_back({d, Complex(2.0, -1.0) + 3.0 * d - 4.0 * d * d});
  }
  const CurrentValue v = limit_extrapolate(trace, 2);
  EXPECT_LT(std::abs(v.value - Complex(2.0, -1.0)), 1e-12);
  EXPECT_LT(v.error_estimate, 1e-10);
}

TEST(Extrapolate, GrowingTraceIsDiverging) {
  std::vector<TracePoint> trace;
  for (int j = 0; j < 6; ++j) {
    const double d = 0.1 * std::pow(0.5, j);
    trace.push_back({d, Complex(1.0 / d, 0.0)});
  }
  try {
    limit_extrapolate(trace, 2);
    FAIL() << "expected Diverging";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Diverging);
  }
}

TEST(Extrapolate, NoiseFloorSuppressesRoundoffGrowth) {
  // Rounding noise amplified by delta^-2 is not a divergence when it stays in the floor.
  std::vector<TracePoint> trace;
  for (int j = 0; j < 6; ++j) {
    const double d = 0.1 * std::pow(0.5, j);
    trace.push_back({d, Complex(1e-18 / (d * d), 0.0), 1e-11});
  }
  const CurrentValue v = limit_extrapolate(trace, 2);
  EXPECT_EQ(v.value, Complex{});
  EXPECT_THROW(limit_extrapolate(std::span<const TracePoint>(trace.data(), 3), 2), Error);
}

TEST(Extrapolate, ExtrapolateToZero) {
  const std::vector<double> h{0.4, 0.2, 0.1};
  std::vector<Complex> v;
  for (double x : h) v.push_back(5.0 + x * x);
  EXPECT_LT(std::abs(extrapolate_to_zero(h, v) - 5.0), 1e-13);
}

}  // namespace
}  // namespace skop
