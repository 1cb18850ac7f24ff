// Writes reference values of K on the (2,3) cusp computed at double resolution.
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "skop/operators.hpp"

int main(int argc, char** argv) {
  using namespace skop;
  if (argc != 2) {
    std::cerr << "usage: skop_golden OUTPUT.json\n";
    return 1;
  }
  const auto kernel = curve_kernel_assemble(make_cusp(2, 3), WeightSpec::for_ball(1.0), KernelRole::Solution);
  const Parametrization& param = *kernel.parametrization();
  QuadratureSpec fine;
  fine.radial_points = 30;
  fine.angular_points = 128;
  fine.max_angular_points = 8192;
  fine.adaptive_tolerance = 1e-12;

  nlohmann::json out;
  out["curve"] = "cusp:2,3";
  out["quadrature"] = {{"radial_points", fine.radial_points},
                       {"angular_points", fine.angular_points},
                       {"tol", fine.adaptive_tolerance}};
  out["cases"] = nlohmann::json::array();
  const std::vector<std::pair<std::string, std::string>> forms{{"1", "0"}, {"z2", "conj(z1) + z1"}};
  const auto targets = default_targets(8, 0.2, 0.6 * kernel.disc_radius());
  for (const auto& [p, q] : forms) {
    const TestForm phi = pullback_form(param, parse_polynomial(p, ambient_variables()),
                                       parse_polynomial(q, ambient_variables()), 0.8);
    nlohmann::json c{{"dz1b", p}, {"dz2b", q}, {"support", 0.8}, {"values", nlohmann::json::array()}};
    for (Complex t : targets) {
      const CurrentValue v = apply_K_at(kernel, phi.sampled(), t, fine);
      c["values"].push_back({{"t_re", t.real()}, {"t_im", t.imag()}, {"value_re", v.value.real()},
                             {"value_im", v.value.imag()}, {"error", v.error_estimate}});
    }
    out["cases"].push_back(std::move(c));
  }
  std::ofstream(argv[1]) << out.dump(2) << '\n';
  return 0;
}
