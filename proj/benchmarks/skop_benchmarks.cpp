#include <benchmark/benchmark.h>

#include "skop/obstruction.hpp"
#include "skop/operators.hpp"
#include "skop/residue.hpp"

namespace {

using namespace skop;

RationalPoly tp(const std::string& s) { return parse_polynomial(s, parameter_variables()); }

void BM_ApplyKOnCusp(benchmark::State& state) {
  const auto kernel = curve_kernel_assemble(make_cusp(2, 3), WeightSpec::for_ball(1.0), KernelRole::Solution);
  const TestForm phi = pullback_form(*kernel.parametrization(), parse_polynomial("z2", ambient_variables()),
                                     parse_polynomial("conj(z1)", ambient_variables()), 0.8);
  const SampledForm sampled = phi.sampled();
  QuadratureSpec quad;
  quad.adaptive_tolerance = state.range(0) == 0 ? 1e-10 : 1e-8;
  for (auto _ : state) benchmark::DoNotOptimize(apply_K_at(kernel, sampled, Complex(0.3, 0.2), quad));
}
BENCHMARK(BM_ApplyKOnCusp)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ResiduePair(benchmark::State& state) {
  const TestForm psi(tp("1 + t^2 + conj(t)*t"), 0, 1.0);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(residue_pair(m, psi, RegularizationSchedule{}, QuadratureSpec{}));
}
BENCHMARK(BM_ResiduePair)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_JetFeasibility(benchmark::State& state) {
  const RationalPoly g1 = holomorphic_in_parameter(tp("t^3"));
  const RationalPoly g2 = holomorphic_in_parameter(tp("t^7 + t^8"));
  const RationalPoly mu = tp("3*(conj(t)^9 + conj(t)^10)");
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(feasibility(build_jet_system(g1, g2, mu, order)));
}
BENCHMARK(BM_JetFeasibility)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
