#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

#include "skop/operators.hpp"

namespace skop {

namespace {

const Complex kTwoI{0.0, 2.0};
const Complex kTwoPiI{0.0, 2.0 * std::numbers::pi};

}  // namespace

AnnulusSamples sample_annuli(const ParameterFunction& u, const RegularizationSchedule& schedule,
                             const AnnulusRule& rule, int threads) {
  schedule.validate();
  require(rule.radial_points >= 1 && rule.angular_points >= 4 && rule.angular_points % 2 == 0,
          "annulus rule needs radial_points >= 1 and an even angular_points >= 4");
  AnnulusSamples out;
  out.schedule = schedule;
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (double delta : schedule.deltas()) {
    out.nodes.push_back(annulus_rule(delta, 2.0 * delta, rule.radial_points, rule.angular_points));
    out.values.emplace_back(out.nodes.back().size());
    out.scales.emplace_back(out.nodes.back().size());
    for (std::size_t i = 0; i < out.nodes.back().size(); ++i) index.emplace_back(out.nodes.size() - 1, i);
  }
  parallel_for(index.size(), threads, [&](std::size_t n) {
    const auto [level, i] = index[n];
    out.values[level][i] = u(out.nodes[level][i].point);
    out.scales[level][i] = std::abs(out.values[level][i]);
  });
  return out;
}

AnnulusSamples subtract(const AnnulusSamples& samples, const ParameterFunction& g) {
  AnnulusSamples out = samples;
  for (std::size_t level = 0; level < out.nodes.size(); ++level)
    for (std::size_t i = 0; i < out.nodes[level].size(); ++i) {
      const Complex gi = g(out.nodes[level][i].point);
      out.values[level][i] -= gi;
      out.scales[level][i] = std::max({out.scales[level][i], std::abs(gi), std::abs(out.values[level][i])});
    }
  return out;
}

std::vector<TracePoint> moment_trace(const AnnulusSamples& samples, const StructureForm& omega, int exponent) {
  const Cutoff cutoff;
  const auto deltas = samples.schedule.deltas();
  std::vector<TracePoint> trace;
  for (std::size_t level = 0; level < samples.nodes.size(); ++level) {
    Complex sum{};
    double magnitude = 0.0;
    double weight_mass = 0.0;
    for (std::size_t i = 0; i < samples.nodes[level].size(); ++i) {
      const QuadratureNode& node = samples.nodes[level][i];
      const Complex dchi = cutoff_eval(cutoff, deltas[level], node.point).dbar_part;
      const Complex pairing = node.weight * dchi * omega.coefficient(node.point) * ipow(node.point, exponent);
      const Complex term = pairing * samples.values[level][i];
      sum += term;
      magnitude += std::abs(pairing) * samples.scales[level][i];
      weight_mass += std::abs(pairing);
    }
    const double floor = samples.relative_noise * magnitude + samples.absolute_noise * weight_mass;
    if (std::abs(sum) <= floor) sum = 0.0;
    trace.push_back({deltas[level], kTwoI * sum});
  }
  return trace;
}

namespace {

MomentTrace evaluate_moment(const AnnulusSamples& samples, const StructureForm& omega, int exponent) {
  MomentTrace m;
  m.exponent = exponent;
  const auto trace = moment_trace(samples, omega, exponent);
  for (const auto& p : trace) m.max_abs = std::max(m.max_abs, std::abs(p.value));
  try {
    m.limit = limit_extrapolate(trace, samples.schedule.extrapolation_order);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Diverging) throw;
    m.diverging = true;
    m.note = e.what();
    m.limit.trace = trace;
    m.limit.value = trace.back().value;
    m.limit.error_estimate = std::numeric_limits<double>::infinity();
  }
  return m;
}

}  // namespace

MembershipVerdict membership_test(const AnnulusSamples& samples, const StructureForm& omega,
                                  const std::vector<int>& test_exponents, const MembershipOptions& options) {
  require(!test_exponents.empty(), "membership test needs at least one test function");
  MembershipVerdict verdict;
  verdict.pass = true;
  for (int j : test_exponents) {
    MomentTrace m = evaluate_moment(samples, omega, j);
    const double allowed = std::max(options.absolute_tolerance, options.relative_tolerance * m.max_abs);
    const bool ok = !m.diverging && (std::abs(m.limit.value) <= allowed || m.max_abs <= options.absolute_tolerance);
    if (!ok) {
      verdict.pass = false;
      if (!verdict.detail.empty()) verdict.detail += "; ";
      verdict.detail += "tau^" + std::to_string(j) + (m.diverging ? ": diverging" : ": nonzero limit");
    }
    verdict.moments.push_back(std::move(m));
  }
  const auto& first = verdict.moments.front();
  verdict.decay_ratio = first.max_abs > 0.0 ? std::abs(first.limit.trace.back().value) / first.max_abs : 0.0;
  if (verdict.pass) verdict.detail = "all boundary moments vanish";
  return verdict;
}

ResidueCoefficients extract_residue_coeffs(const AnnulusSamples& samples, const StructureForm& omega, int j_max,
                                           const ExtractOptions& options) {
  require(j_max >= 0, "j_max must be nonnegative");
  ResidueCoefficients out;
  out.j_max = j_max;
  for (int j = 0; j <= j_max; ++j) {
    const MomentTrace m = evaluate_moment(samples, omega, j);
    if (m.diverging) fail(ErrorKind::Diverging, "residue moment tau^" + std::to_string(j) + ": " + m.note);
    const Complex c = m.limit.value / kTwoPiI;
    const double err = m.limit.error_estimate / (2.0 * std::numbers::pi);
    const bool masked = std::abs(c) < std::max(options.mask_tolerance, 3.0 * err);
    out.c.push_back(masked ? Complex{} : c);
    out.error.push_back(err);
    out.masked.push_back(masked);
  }
  out.order_warning = !out.masked.back();
  return out;
}

std::vector<std::pair<int, Complex>> correction_terms(const ResidueCoefficients& coeffs, const StructureForm& omega) {
  std::vector<std::pair<int, Complex>> out;
  for (std::size_t j = 0; j < coeffs.c.size(); ++j) {
    if (coeffs.masked[j]) continue;
    out.emplace_back(omega.pole_order - static_cast<int>(j) - 1, coeffs.c[j] / omega.constant_factor);
  }
  return out;
}

ParameterFunction correction_function(const ResidueCoefficients& coeffs, const StructureForm& omega) {
  return [terms = correction_terms(coeffs, omega), omega](Complex tau) {
    Complex sum{};
    for (const auto& [e, c] : terms) sum += c * ipow(tau, e);
    return omega.unit_is_constant() ? sum : sum / omega.unit(tau);
  };
}

ParameterFunction correct_solution(const ParameterFunction& u1, const ResidueCoefficients& coeffs,
                                   const StructureForm& omega) {
  return [u1, u2 = correction_function(coeffs, omega)](Complex tau) { return u1(tau) - u2(tau); };
}

SolveReport solve_dbar(const KernelSpec& kernel_in, const SampledForm& mu, const SolveOptions& options) {
  require(mu.degree == 1, "solve_dbar needs a (0,1)-form");
  const KernelSpec kernel = kernel_in.with_role(KernelRole::Solution);
  const StructureForm& omega = kernel.structure();
  const double disc = kernel.disc_radius();
  RegularizationSchedule schedule = options.schedule;
  if (schedule.delta_max <= 0.0) schedule.delta_max = RegularizationSchedule::for_disc(disc).delta_max;
  schedule.validate();
  const int j_max = options.j_max >= 0 ? options.j_max : omega.pole_order + 5;

  SolveReport report;
  const QuadratureSpec quad = options.op.quad;
  std::mutex noise_mutex;
  double worst_error = 0.0;
  const ParameterFunction u1 = [&](Complex tau) {
    const CurrentValue v = apply_K_at(kernel, mu, tau, quad);
    const std::lock_guard lock(noise_mutex);
    worst_error = std::max(worst_error, v.error_estimate);
    return v.value;
  };

  const auto targets = default_targets(options.sample_count, 0.2 * disc, 0.6 * disc);
  report.raw_solution = apply_K(kernel, mu, targets, options.op);

  if (kernel.curve()) {
    report.test_exponents = semigroup_elements(*kernel.curve(), j_max);
  } else {
    for (int j = 0; j <= j_max; ++j) report.test_exponents.push_back(j);
  }

  AnnulusSamples samples = sample_annuli(u1, schedule, options.annulus, options.op.threads);
  samples.absolute_noise = 10.0 * worst_error;
  report.membership_before = membership_test(samples, omega, report.test_exponents, options.membership);
  report.coefficients = extract_residue_coeffs(samples, omega, j_max, options.extract);
  report.correction = correction_terms(report.coefficients, omega);
  const ParameterFunction u2 = correction_function(report.coefficients, omega);
  report.membership_after = membership_test(subtract(samples, u2), omega, report.test_exponents, options.membership);

  const double h = fd_step(quad);
  report.dbar_residuals.resize(targets.size());
  parallel_for(targets.size(), options.op.threads, [&](std::size_t i) {
    const Complex t = targets[i];
    const Complex du = dbar_fd(u1, t, h) - dbar_fd(u2, t, h);
    report.dbar_residuals[i] = {t, std::abs(du - mu.coefficient(t))};
  });
  for (const auto& [t, r] : report.dbar_residuals) report.max_dbar_residual = std::max(report.max_dbar_residual, r);
  report.pass = report.membership_after.pass && report.max_dbar_residual <= 1e-3;
  return report;
}

}  // namespace skop
