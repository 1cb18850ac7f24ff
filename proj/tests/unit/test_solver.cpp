#include <gtest/gtest.h>

#include <cmath>

#include "skop/operators.hpp"

namespace skop {
namespace {

struct CuspFixture : ::testing::Test {
  CuspFixture()
      : cusp(make_cusp(2, 3)),
        kernel(curve_kernel_assemble(cusp, WeightSpec::for_ball(1.0), KernelRole::Solution)),
        omega(kernel.structure()),
        schedule(RegularizationSchedule::for_disc(kernel.disc_radius())),
        exponents(semigroup_elements(cusp, omega.pole_order + 5)) {}

  AnnulusSamples sample(const ParameterFunction& u) const { return sample_annuli(u, schedule); }

  CurveSpec cusp;
  KernelSpec kernel;
  StructureForm omega;
  RegularizationSchedule schedule;
  std::vector<int> exponents;
};

TEST_F(CuspFixture, ConstantPasses) {
  const MembershipVerdict v = membership_test(sample([](Complex) { return Complex(1.0, 0.0); }), omega, exponents);
  EXPECT_TRUE(v.pass) << v.detail;
}

TEST_F(CuspFixture, SmoothPullbackPasses) {
  const auto u = [](Complex t) { return std::pow(std::conj(t), 3) * t * t + std::conj(t * t); };
  EXPECT_TRUE(membership_test(sample(u), omega, exponents).pass);
}

TEST_F(CuspFixture, InverseSquareFails) {
  const MembershipVerdict v = membership_test(sample([](Complex t) { return 1.0 / (t * t); }), omega, exponents);
  EXPECT_FALSE(v.pass);
}

TEST_F(CuspFixture, ExtractionRecoversPlantedTerms) {
  const Complex c1{0.3, -0.2}, c2{-0.1, 0.05};
  const auto u = [&](Complex t) { return std::conj(t) + c1 / t + c2 / (t * t); };
  const AnnulusSamples s = sample(u);
  const ResidueCoefficients coeffs = extract_residue_coeffs(s, omega, omega.pole_order + 5);
  Complex got1{}, got2{};
  for (const auto& [e, c] : correction_terms(coeffs, omega)) {
    if (e == -1) got1 = c;
    if (e == -2) got2 = c;
  }
  EXPECT_LT(std::abs(got1 - c1), 1e-6);
  EXPECT_LT(std::abs(got2 - c2), 1e-6);
  EXPECT_TRUE(membership_test(subtract(s, correction_function(coeffs, omega)), omega, exponents).pass);
  const auto corrected = correct_solution(u, coeffs, omega);
  const Complex t{0.2, 0.3};
  EXPECT_LT(std::abs(corrected(t) - std::conj(t)), 1e-6);
}

TEST_F(CuspFixture, TruncatedExtractionWarns) {
  // A pole of order k + 1 needs c_0, which a j_max = 0 run still sees; a pole
  // at higher order leaves the last coefficient large.
  const auto u = [](Complex t) { return 1.0 / t; };
  const ResidueCoefficients coeffs = extract_residue_coeffs(sample(u), omega, omega.pole_order);
  EXPECT_TRUE(coeffs.order_warning);
  const ResidueCoefficients none = extract_residue_coeffs(sample([](Complex) { return Complex(1.0); }), omega, 0);
  EXPECT_FALSE(none.order_warning);
  EXPECT_TRUE(none.masked[0]);
}

TEST_F(CuspFixture, SolveDbar) {
  const Parametrization& param = *kernel.parametrization();
  const TestForm psi = pullback_function(param, parse_polynomial("conj(z2)", ambient_variables()), 0.8);
  SolveOptions opts;
  opts.sample_count = 6;
  const SolveReport rep = solve_dbar(kernel, psi.dbar_form(), opts);
  EXPECT_TRUE(rep.membership_after.pass);
  EXPECT_TRUE(rep.pass);
  EXPECT_LT(rep.max_dbar_residual, 1e-3);
  EXPECT_EQ(rep.test_exponents, exponents);
}

}  // namespace
}  // namespace skop
