#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "skop/kernels.hpp"

namespace skop {
namespace {

constexpr double kPi = std::numbers::pi;

RationalPoly hol(const std::string& s) { return parse_polynomial(s, holomorphic_ambient_variables()); }

TEST(Hefer, DividedDifferencesOfCusp) {
  const HeferData h = hefer(hol("z1^2 - z2^3"));
  EXPECT_TRUE(h.identity_defect().is_zero());
  const auto& v = hefer_variables();
  EXPECT_EQ(h.g1, parse_polynomial("zeta1 + z1", v));
  EXPECT_EQ(h.g2, parse_polynomial("-(zeta2^2 + zeta2*z2 + z2^2)", v));
}

TEST(Hefer, IdentityHoldsForMixedPolynomials) {
  for (const char* a : {"z1^3 - z2^4", "z1^2*z2 + 3*z2^5 - z1", "7"}) {
    EXPECT_TRUE(hefer(hol(a)).identity_defect().is_zero()) << a;
  }
}

TEST(CuspKernel, RatioAndFactor) {
  // (8 - 1) / ((8 - 1)... ) at (tau, t) = (2, 1): (64 - 1) / ((8 - 1)(4 - 1)) = 3.
  EXPECT_LT(std::abs(cusp_kernel_ratio(2, 3, 2.0, 1.0) - 3.0), 1e-13);
  EXPECT_LT(std::abs(cusp_kernel_factor(2, 3, 2.0, 1.0) - 0.75), 1e-13);
  EXPECT_LT(std::abs(cusp_kernel_factor(2, 3, 1.0, 0.0) - 1.0), 1e-13);
  // Generic point against the defining quotient.
  const Complex tau{0.4, 0.3}, t{-0.2, 0.5};
  const auto p = [](Complex z, int n) { return std::pow(z, n); };
  const Complex direct = (p(tau, 6) - p(t, 6)) / ((p(tau, 3) - p(t, 3)) * (p(tau, 2) - p(t, 2)));
  EXPECT_LT(std::abs(cusp_kernel_ratio(2, 3, tau, t) - direct), 1e-12);
}

TEST(CuspKernel, ClosedFormMatchesGeneralAssembly) {
  const CurveSpec cusp = make_cusp(2, 3);
  const WeightSpec w = WeightSpec::for_ball(1.0);
  const auto closed = curve_kernel_assemble(cusp, w, KernelRole::Solution);
  const auto general = curve_kernel_assemble(cusp, w, KernelRole::Solution, KernelVariant::GeneralCodimOne);
  EXPECT_EQ(closed.variant(), KernelVariant::CuspClosedForm);
  EXPECT_EQ(general.variant(), KernelVariant::GeneralCodimOne);
  for (Complex tau : {Complex(0.5, 0.1), Complex(-0.3, 0.6), Complex(0.05, -0.7)}) {
    for (Complex t : {Complex(0.2, 0.2), Complex(-0.4, -0.1)}) {
      const Complex a = closed.density(tau, t), b = general.density(tau, t);
      EXPECT_LT(std::abs(a - b), 1e-9 * std::abs(a)) << tau << ' ' << t;
    }
  }
  EXPECT_LT(branch_consistency(general), 1e-8);
}

TEST(Weight, OneDimensionalSigma) {
  const WeightSpec w = WeightSpec::for_ball(1.0, 1);
  const Complex zeta[] = {0.9};
  const Complex z[] = {0.0};
  const WeightValue v = weight_vikt_eval(w, zeta, z);
  ASSERT_EQ(v.sigma.size(), 1u);
  EXPECT_LT(std::abs(v.sigma[0] - 1.0 / (Complex(0.0, 2.0 * kPi) * 0.9)), 1e-14);
  EXPECT_GT(v.g0, 0.0);
  EXPECT_LT(v.g0, 1.0);
}

TEST(Weight, ChiProfile) {
  const WeightSpec w = WeightSpec::for_ball(2.0);
  EXPECT_DOUBLE_EQ(w.inner_radius, 1.5);
  EXPECT_DOUBLE_EQ(w.outer_radius, 1.9);
  EXPECT_EQ(w.chi(1.0), 1.0);
  EXPECT_EQ(w.chi(1.95), 0.0);
  const double h = 1e-6;
  EXPECT_NEAR(w.chi_derivative(1.7), (w.chi(1.7 + h) - w.chi(1.7 - h)) / (2 * h), 1e-6);
  WeightSpec bad = w;
  bad.inner_radius = 2.0;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(BochnerMartinelli, OneVariableIsCauchy) {
  const Complex zeta[] = {Complex(0.3, 0.1)};
  const Complex z[] = {Complex(-0.2, 0.4)};
  const BMForm b = bm_form_eval(1, zeta, z);
  EXPECT_LT(std::abs(b.b1[0] - 1.0 / (Complex(0.0, 2.0 * kPi) * (zeta[0] - z[0]))), 1e-13);
}

TEST(Stout, ReproducesHolomorphicFunctionsOnCusp) {
  const CurveSpec cusp = make_cusp(2, 3);
  const Complex t{0.3, -0.2};
  for (const auto& [f, k] : std::vector<std::pair<std::string, int>>{{"1", 0}, {"z2", 2}, {"z1*z2", 5}}) {
    const ContourValue v = stout_boundary_kernel(cusp, hol(f), t);
    EXPECT_LT(std::abs(v.value - std::pow(t, k)), 1e-8) << f;
  }
}

TEST(KernelSpec, SmoothDiscIsCauchy) {
  const auto k = smooth_disc_kernel(1.0, WeightSpec::for_ball(1.0, 1), KernelRole::Projection);
  EXPECT_EQ(k.pole_order(), 0);
  const Complex tau{0.5, 0.2}, t{0.1, -0.3};
  EXPECT_LT(std::abs(k.density(tau, t) - 1.0 / (tau - t)), 1e-14);
  EXPECT_EQ(k.chi(Complex(0.5, 0.0)), 1.0);
}

}  // namespace
}  // namespace skop
