#include <algorithm>
#include <cmath>

#include "skop/regularization.hpp"

namespace skop {

double Cutoff::profile(double x) const {
  const double u = std::clamp(x - 1.0, 0.0, 1.0);
  const double u4 = u * u * u * u;
  return u4 * (35.0 + u * (-84.0 + u * (70.0 - 20.0 * u)));
}

double Cutoff::derivative(double x) const {
  if (x <= 1.0 || x >= 2.0) return 0.0;
  const double u = x - 1.0;
  const double v = 1.0 - u;
  return 140.0 * u * u * u * v * v * v;
}

CutoffValue cutoff_eval(const Cutoff& cutoff, double delta, Complex tau) {
  require(delta > 0.0, "cutoff_eval: delta must be positive");
  const double r = std::abs(tau);
  CutoffValue out;
  out.value = cutoff.profile(r / delta);
  if (r > 0.0) {
    const double d = cutoff.derivative(r / delta);
    if (d != 0.0) out.dbar_part = d * tau / (2.0 * r * delta);
  }
  return out;
}

std::vector<double> RegularizationSchedule::deltas() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  double d = delta_max;
  for (int j = 0; j < count; ++j) {
    out.push_back(d);
    d *= ratio;
  }
  return out;
}

void RegularizationSchedule::validate() const {
  require(delta_max > 0.0, "schedule: delta_max must be positive");
  require(ratio > 0.0 && ratio < 1.0, "schedule: ratio must lie in (0, 1)");
  require(count >= 4, "schedule: count must be at least 4");
  require(extrapolation_order >= 1, "schedule: extrapolation_order must be at least 1");
  require(count >= extrapolation_order + 2, "schedule: count must be >= extrapolation_order + 2");
}

RegularizationSchedule RegularizationSchedule::for_disc(double disc_radius) {
  RegularizationSchedule s;
  s.delta_max = 0.2 * disc_radius;
  return s;
}

void QuadratureSpec::validate() const {
  require(radial_points >= 1, "quadrature: radial_points must be positive");
  require(angular_points >= 4 && angular_points % 2 == 0, "quadrature: angular_points must be even and >= 4");
  require(adaptive_tolerance > 0.0, "quadrature: tolerance must be positive");
  require(max_angular_points >= angular_points, "quadrature: max_angular_points below angular_points");
  require(max_levels >= 4, "quadrature: max_levels must be at least 4");
}

}  // namespace skop
