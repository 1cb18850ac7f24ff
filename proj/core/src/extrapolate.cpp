#include <algorithm>
#include <cmath>

#include "skop/regularization.hpp"

namespace skop {

CurrentValue limit_extrapolate(std::span<const TracePoint> trace, int extrapolation_order) {
  require(extrapolation_order >= 1, "limit_extrapolate: order must be >= 1");
  const std::size_t need = static_cast<std::size_t>(extrapolation_order) + 2;
  require(trace.size() >= need, "limit_extrapolate: need at least order + 2 trace points");

  // Values inside their own noise floor carry no information.
  std::vector<TracePoint> pts(trace.begin(), trace.end());
  double floor = 0.0;
  for (auto& p : pts) {
    if (std::abs(p.value) <= p.noise) p.value = 0.0;
    floor = std::max(floor, p.noise);
  }
  trace = pts;

  const std::size_t n = trace.size();
  double vmax = 0.0;
  for (const auto& p : trace) vmax = std::max(vmax, std::abs(p.value));
  const double noise = 1e-12 * vmax + floor + 1e-300;

  // Growth check on successive differences: a convergent geometric trace has
  // shrinking differences, a divergent one does not.
  if (n >= 4) {
    std::vector<double> diff;
    for (std::size_t j = n - 3; j < n; ++j) diff.push_back(std::abs(trace[j].value - trace[j - 1].value));
    const bool growing = diff[1] >= 0.9 * diff[0] && diff[2] >= 0.9 * diff[1] && diff[2] > 1e-9 * vmax &&
                         diff[2] > trace[n - 1].noise + trace[n - 2].noise &&
                         std::abs(trace[n - 1].value) > std::abs(trace[n - 3].value);
    if (growing) {
      const double ratio = diff[2] / std::max(diff[1], noise);
      const double h_ratio = trace[n - 1].delta / trace[n - 2].delta;
      const double exponent = (h_ratio > 0.0 && h_ratio != 1.0) ? std::log(ratio) / std::log(h_ratio) : 0.0;
      fail(ErrorKind::Diverging, "limit_extrapolate: trace grows as delta -> 0 (growth exponent approx " +
                                     std::to_string(-exponent) + ")");
    }
  }

  auto extrapolate_window = [&](std::size_t end) {
    const std::size_t width = static_cast<std::size_t>(extrapolation_order) + 1;
    std::vector<double> h;
    std::vector<Complex> v;
    for (std::size_t j = end - width; j < end; ++j) {
      h.push_back(trace[j].delta);
      v.push_back(trace[j].value);
    }
    return extrapolate_to_zero(h, v);
  };

  CurrentValue out;
  out.value = extrapolate_window(n);
  const Complex previous = extrapolate_window(n - 1);
  out.error_estimate = std::abs(out.value - previous) + noise;
  out.trace = std::move(pts);
  return out;
}

}  // namespace skop
