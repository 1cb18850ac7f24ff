#include "skop/residue.hpp"

#include <cmath>

namespace skop {

namespace {

const Complex kTwoI{0.0, 2.0};

QuadratureSpec plain(const QuadratureSpec& quad) {
  QuadratureSpec q = quad;
  q.exclusion = ExclusionPolicy::None;
  q.exclusion_target.reset();
  return q;
}

void check_schedule(const RegularizationSchedule& schedule, double support_radius) {
  schedule.validate();
  require(2.0 * schedule.delta_max < support_radius, "schedule: 2 * delta_max must lie inside the support radius");
}

}  // namespace

CurrentValue pv_pair(int m, const TestForm& psi, const RegularizationSchedule& schedule, const QuadratureSpec& quad) {
  require(m >= 1, "pv order must be >= 1");
  require(psi.degree() == 0, "pv_pair pairs against a function");
  check_schedule(schedule, psi.support_radius());
  const QuadratureSpec q = plain(quad);
  const Cutoff cutoff;
  std::vector<TracePoint> trace;
  double quad_err = 0.0;
  for (double delta : schedule.deltas()) {
    DiscIntegrand f;
    f.inner_radius = delta;
    f.outer_radius = psi.support_radius();
    f.knots = {2.0 * delta, 0.5 * psi.support_radius()};
    f.density = [&](Complex tau) {
      return cutoff.profile(std::abs(tau) / delta) * psi.value(tau) * ipow(tau, -m);
    };
    const CurrentValue v = pv_integrate(f, q, {});
    trace.push_back({delta, v.value, v.error_estimate});
    quad_err = std::max(quad_err, v.error_estimate);
  }
  CurrentValue out = limit_extrapolate(trace, schedule.extrapolation_order);
  out.error_estimate += quad_err;
  return out;
}

CurrentValue pv_direct(int m, const TestForm& psi, const QuadratureSpec& quad) {
  require(m >= 1, "pv order must be >= 1");
  require(psi.degree() == 0, "pv_direct pairs against a function");
  QuadratureSpec q = quad;
  q.exclusion = ExclusionPolicy::AroundParameterOrigin;
  DiscIntegrand f;
  f.outer_radius = psi.support_radius();
  f.knots = {0.5 * psi.support_radius()};
  f.density = [&](Complex tau) { return psi.value(tau) * ipow(tau, -m); };
  const Complex origin{};
  return pv_integrate(f, q, std::span<const Complex>(&origin, 1));
}

CurrentValue residue_pair(int m, const TestForm& psi, const RegularizationSchedule& schedule,
                          const QuadratureSpec& quad) {
  require(m >= 1, "residue order must be >= 1");
  require(psi.degree() == 0, "residue_pair pairs against a function times dtau");
  check_schedule(schedule, psi.support_radius());
  const QuadratureSpec q = plain(quad);
  const Cutoff cutoff;
  std::vector<TracePoint> trace;
  double quad_err = 0.0;
  for (double delta : schedule.deltas()) {
    DiscIntegrand f;
    f.inner_radius = delta;
    f.outer_radius = 2.0 * delta;
    f.density = [&](Complex tau) {
      const CutoffValue c = cutoff_eval(cutoff, delta, tau);
      return kTwoI * c.dbar_part * psi.value(tau) * ipow(tau, -m);
    };
    const CurrentValue v = pv_integrate(f, q, {});
    trace.push_back({delta, v.value, v.error_estimate});
    quad_err = std::max(quad_err, v.error_estimate);
  }
  CurrentValue out = limit_extrapolate(trace, schedule.extrapolation_order);
  out.error_estimate += quad_err;
  return out;
}

CurrentValue ch_product_pair(int p, int q, const AmbientTestFunction& psi, const RegularizationSchedule& schedule,
                             const ProductRule& rule) {
  require(p >= 1 && q >= 1, "residue orders must be >= 1");
  require(psi.polynomial.nvars() == 4, "test function must be a polynomial in (z1, conj z1, z2, conj z2)");
  require(rule.scale_power > 1.0, "second cutoff scale must be finer than the first");
  require(rule.angular_points >= 4 && rule.angular_points % 2 == 0, "angular_points must be even");
  check_schedule(schedule, psi.support_radius);
  const NumericPoly f(psi.polynomial);
  const Cutoff cutoff;
  const double R = psi.support_radius;
  std::vector<TracePoint> trace;
  for (double delta : schedule.deltas()) {
    const double delta2 = std::pow(delta, rule.scale_power);
    const auto rule1 = annulus_rule(delta, 2.0 * delta, rule.radial_points, rule.angular_points);
    const auto rule2 = annulus_rule(delta2, 2.0 * delta2, rule.radial_points, rule.angular_points);
    // Per-factor weights: 2i dbar(chi) / z^order times the bump.
    std::vector<Complex> w1(rule1.size()), w2(rule2.size());
    for (std::size_t i = 0; i < rule1.size(); ++i) {
      const Complex z = rule1[i].point;
      w1[i] = kTwoI * cutoff_eval(cutoff, delta, z).dbar_part * ipow(z, -p) * rule1[i].weight *
              cutoff.bump(std::abs(z) / R);
    }
    for (std::size_t j = 0; j < rule2.size(); ++j) {
      const Complex z = rule2[j].point;
      w2[j] = kTwoI * cutoff_eval(cutoff, delta2, z).dbar_part * ipow(z, -q) * rule2[j].weight *
              cutoff.bump(std::abs(z) / R);
    }
    Complex sum{};
    double magnitude = 0.0;
    Complex args[4];
    for (std::size_t i = 0; i < rule1.size(); ++i) {
      args[0] = rule1[i].point;
      args[1] = std::conj(args[0]);
      Complex inner{};
      double inner_abs = 0.0;
      for (std::size_t j = 0; j < rule2.size(); ++j) {
        args[2] = rule2[j].point;
        args[3] = std::conj(args[2]);
        const Complex term = w2[j] * f(std::span<const Complex>(args, 4));
        inner += term;
        inner_abs += std::abs(term);
      }
      sum += w1[i] * inner;
      magnitude += std::abs(w1[i]) * inner_abs;
    }
    // Cancellation in the angular sums leaves rounding of relative size ~1e-13.
    trace.push_back({delta, sum, 1e-13 * magnitude});
  }
  return limit_extrapolate(trace, schedule.extrapolation_order);
}

CurrentValue sep_restrict(int m, const TestForm& psi, const RegularizationSchedule& schedule,
                          const QuadratureSpec& quad) {
  const CurrentValue full = pv_direct(m, psi, quad);
  const CurrentValue outside = pv_pair(m, psi, schedule, quad);
  CurrentValue out;
  out.value = full.value - outside.value;
  out.error_estimate = full.error_estimate + outside.error_estimate;
  out.trace = outside.trace;
  for (auto& t : out.trace) t.value = full.value - t.value;
  return out;
}

CurrentValue sep_restrict_residue(int m, const TestForm& psi, const RegularizationSchedule& schedule,
                                  const QuadratureSpec& quad) {
  const CurrentValue full = residue_pair(m, psi, schedule, quad);
  // <chi_eps dbar(1/tau^m), psi dtau>: the residue current is evaluated with an
  // inner cutoff scale well below eps, where chi_eps vanishes identically.
  const QuadratureSpec q = plain(quad);
  const Cutoff cutoff;
  std::vector<TracePoint> trace;
  for (double eps : schedule.deltas()) {
    RegularizationSchedule inner = schedule;
    inner.delta_max = 0.25 * eps;
    std::vector<TracePoint> inner_trace;
    for (double delta : inner.deltas()) {
      DiscIntegrand f;
      f.inner_radius = delta;
      f.outer_radius = 2.0 * delta;
      f.density = [&](Complex tau) {
        const CutoffValue c = cutoff_eval(cutoff, delta, tau);
        return cutoff.profile(std::abs(tau) / eps) * kTwoI * c.dbar_part * psi.value(tau) * ipow(tau, -m);
      };
      const CurrentValue v = pv_integrate(f, q, {});
      inner_trace.push_back({delta, v.value, v.error_estimate});
    }
    trace.push_back({eps, full.value - limit_extrapolate(inner_trace, inner.extrapolation_order).value});
  }
  CurrentValue out = limit_extrapolate(trace, schedule.extrapolation_order);
  out.error_estimate += full.error_estimate;
  return out;
}

}  // namespace skop
