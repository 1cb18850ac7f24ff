#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "skop/operators.hpp"

namespace skop {
namespace {

RationalPoly tp(const std::string& s) { return parse_polynomial(s, parameter_variables()); }
RationalPoly ap(const std::string& s) { return parse_polynomial(s, ambient_variables()); }

TEST(Operators, DefaultTargetsAreDeterministicAndInRange) {
  const auto a = default_targets(12, 0.2, 0.6);
  EXPECT_EQ(a, default_targets(12, 0.2, 0.6));
  ASSERT_EQ(a.size(), 12u);
  for (Complex t : a) {
    EXPECT_GE(std::abs(t), 0.2 - 1e-15);
    EXPECT_LE(std::abs(t), 0.6 + 1e-15);
  }
}

TEST(Operators, ParallelForCoversEveryIndex) {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(Operators, FiniteDifferenceDbar) {
  const auto f = [](Complex t) { return t * std::conj(t) * std::conj(t) + t * t; };
  const Complex t{0.3, 0.4};
  EXPECT_LT(std::abs(dbar_fd(f, t, 1e-3) - 2.0 * t * std::conj(t)), 1e-9);
}

TEST(Operators, DiscProjectionReproducesHolomorphicPolynomials) {
  const auto kernel = smooth_disc_kernel(1.0, WeightSpec::for_ball(1.0, 1), KernelRole::Projection);
  const auto targets = default_targets(4, 0.2, 0.6);
  for (int k : {0, 3}) {
    const auto out = apply_P(kernel, polynomial_form(tp("t^" + std::to_string(k)), 0, 1.0), targets);
    for (const Sample& s : out) EXPECT_LT(std::abs(s.value - std::pow(s.t, k)), 1e-7) << k;
  }
}

TEST(Operators, DiscKoppelman) {
  const auto kernel = smooth_disc_kernel(1.0, WeightSpec::for_ball(1.0, 1), KernelRole::Projection);
  const KoppelmanReport rep = verify_koppelman(kernel, TestForm(tp("conj(t) + t^2"), 0, 0.9), default_targets(4, 0.2, 0.6));
  EXPECT_LT(rep.max_residual, 1e-6);
}

TEST(Operators, SolutionOperatorIsLinear) {
  const auto kernel = curve_kernel_assemble(make_cusp(2, 3), WeightSpec::for_ball(1.0), KernelRole::Solution);
  const Parametrization& param = *kernel.parametrization();
  const TestForm a = pullback_form(param, ap("1"), ap("0"), 0.8);
  const TestForm b = pullback_form(param, ap("0"), ap("conj(z1)"), 0.8);
  const TestForm sum = pullback_form(param, ap("1"), ap("conj(z1)"), 0.8);
  const Complex t{0.3, 0.15};
  const QuadratureSpec q;
  const Complex ka = apply_K_at(kernel, a.sampled(), t, q).value;
  const Complex kb = apply_K_at(kernel, b.sampled(), t, q).value;
  const Complex ks = apply_K_at(kernel, sum.sampled(), t, q).value;
  EXPECT_LT(std::abs(ks - ka - kb), 1e-8 * (1.0 + std::abs(ks)));
}

TEST(Operators, ProjectionOutputIsHolomorphic) {
  const auto kernel = curve_kernel_assemble(make_cusp(2, 3), WeightSpec::for_ball(1.0), KernelRole::Projection);
  const auto phi = polynomial_form(tp("conj(t)*t^2 + 1"), 0, kernel.disc_radius());
  const QuadratureSpec q;
  const auto p = [&](Complex t) { return apply_P_at(kernel, phi, t, q).value; };
  const Complex t{0.25, 0.1};
  EXPECT_LT(std::abs(dbar_fd(p, t, fd_step(q))), 1e-5);
}

TEST(Operators, GoldenValuesOnCusp) {
  std::ifstream in(std::string(SKOP_GOLDEN_DIR) + "/cusp23_solution.json");
  ASSERT_TRUE(in) << "missing golden file";
  const nlohmann::json golden = nlohmann::json::parse(in);
  const auto kernel = curve_kernel_assemble(make_cusp(2, 3), WeightSpec::for_ball(1.0), KernelRole::Solution);
  const Parametrization& param = *kernel.parametrization();
  for (const auto& c : golden["cases"]) {
    const TestForm phi = pullback_form(param, ap(c["dz1b"].get<std::string>()), ap(c["dz2b"].get<std::string>()),
                                       c["support"].get<double>());
    for (const auto& v : c["values"]) {
      const Complex t{v["t_re"].get<double>(), v["t_im"].get<double>()};
      const Complex expected{v["value_re"].get<double>(), v["value_im"].get<double>()};
      const Complex got = apply_K_at(kernel, phi.sampled(), t, QuadratureSpec{}).value;
      EXPECT_LT(std::abs(got - expected), 1e-7 * (1.0 + std::abs(expected))) << t;
    }
  }
}

}  // namespace
}  // namespace skop
