#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "skop/operators.hpp"

namespace skop {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> merged_knots(const SampledForm& phi, const KernelSpec& kernel) {
  std::vector<double> knots = phi.knots;
  knots.push_back(kernel.weight_inner_knot());
  knots.push_back(kernel.weight_outer_knot());
  return knots;
}

}  // namespace

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<Complex> default_targets(int count, double r_min, double r_max) {
  require(count >= 1 && r_min > 0.0 && r_max >= r_min, "invalid target range");
  std::vector<Complex> out;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int j = 0; j < count; ++j) {
    const double r = r_min + (r_max - r_min) * (j + 0.5) / count;
    out.push_back(std::polar(r, 0.3 + golden * j));
  }
  return out;
}

CurrentValue apply_K_at(const KernelSpec& kernel, const SampledForm& phi, Complex t, const QuadratureSpec& quad) {
  CurrentValue out;
  if (phi.zero || phi.degree == 0) return out;  // K vanishes on functions
  DiscIntegrand f;
  f.outer_radius = std::min(phi.support_radius, kernel.support_radius());
  f.knots = merged_knots(phi, kernel);
  f.density = [&](Complex tau) -> Complex {
    const double chi = kernel.chi(tau);
    if (chi == 0.0) return {};
    const Complex p = phi.coefficient(tau);
    if (p == Complex{}) return {};
    return chi * kernel.density(tau, t) * p;
  };
  const auto singular = kernel.singular_points(t);
  const CurrentValue v = pv_integrate(f, quad, singular);
  out.value = -v.value / kPi;
  out.error_estimate = v.error_estimate / kPi;
  return out;
}

CurrentValue apply_P_at(const KernelSpec& kernel, const SampledForm& phi, Complex t, const QuadratureSpec& quad) {
  CurrentValue out;
  if (phi.zero || phi.degree == 1) return out;  // P vanishes on (0,1)-forms
  const double inner = kernel.weight_inner_knot();
  const double outer = std::min(phi.support_radius, kernel.support_radius());
  if (outer <= inner) return out;
  require(std::abs(t) < inner, "projection targets must lie where the weight is identically 1");
  DiscIntegrand f;
  f.inner_radius = inner;
  f.outer_radius = outer;
  f.knots = merged_knots(phi, kernel);
  f.density = [&](Complex tau) -> Complex {
    const Complex dchi = kernel.chi_dbar(tau);
    if (dchi == Complex{}) return {};
    return dchi * kernel.density(tau, t) * phi.coefficient(tau);
  };
  QuadratureSpec q = quad;
  q.exclusion = ExclusionPolicy::None;
  const CurrentValue v = pv_integrate(f, q, {});
  out.value = -v.value / kPi;
  out.error_estimate = v.error_estimate / kPi;
  return out;
}

namespace {

std::vector<Sample> apply_many(const std::vector<Complex>& targets, const OperatorOptions& options,
                               const std::function<CurrentValue(Complex)>& op) {
  options.quad.validate();
  std::vector<Sample> out(targets.size());
  parallel_for(targets.size(), options.threads, [&](std::size_t i) {
    const CurrentValue v = op(targets[i]);
    out[i] = {targets[i], v.value, v.error_estimate};
  });
  return out;
}

}  // namespace

std::vector<Sample> apply_K(const KernelSpec& kernel, const SampledForm& phi, const std::vector<Complex>& targets,
                            const OperatorOptions& options) {
  return apply_many(targets, options, [&](Complex t) { return apply_K_at(kernel, phi, t, options.quad); });
}

std::vector<Sample> apply_P(const KernelSpec& kernel, const SampledForm& phi, const std::vector<Complex>& targets,
                            const OperatorOptions& options) {
  return apply_many(targets, options, [&](Complex t) { return apply_P_at(kernel, phi, t, options.quad); });
}

Complex dbar_fd(const std::function<Complex(Complex)>& f, Complex t, double h) {
  // Central differences at h and 2h, combined to cancel the h^2 term.
  auto central = [&](double step) {
    const Complex dx = (f(t + step) - f(t - step)) / (2.0 * step);
    const Complex dy = (f(t + Complex(0.0, step)) - f(t - Complex(0.0, step))) / (2.0 * step);
    return 0.5 * (dx + Complex(0.0, 1.0) * dy);
  };
  return (4.0 * central(h) - central(2.0 * h)) / 3.0;
}

double fd_step(const QuadratureSpec& quad) { return std::max(1e-3, std::sqrt(quad.adaptive_tolerance)); }

KoppelmanReport verify_koppelman(const KernelSpec& kernel, const TestForm& phi, const std::vector<Complex>& targets,
                                 const OperatorOptions& options) {
  options.quad.validate();
  KoppelmanReport report;
  report.degree = phi.degree();
  report.fd_step = fd_step(options.quad);
  report.rows.resize(targets.size());
  const SampledForm sampled = phi.sampled();
  const double h = report.fd_step;
  parallel_for(targets.size(), options.threads, [&](std::size_t i) {
    const Complex t = targets[i];
    KoppelmanRow row;
    row.t = t;
    row.phi = phi.value(t);
    if (phi.degree() == 1) {
      double err = 0.0;
      auto k_at = [&](Complex x) {
        const CurrentValue v = apply_K_at(kernel, sampled, x, options.quad);
        err = std::max(err, v.error_estimate);
        return v.value;
      };
      row.dbar_K = dbar_fd(k_at, t, h);
      row.quad_error = err;
      row.fd_noisy = err / h > 1e-4;
    } else {
      const CurrentValue kd = apply_K_at(kernel, phi.dbar_form(), t, options.quad);
      const CurrentValue p = apply_P_at(kernel, sampled, t, options.quad);
      row.K_dbar = kd.value;
      row.P = p.value;
      row.quad_error = kd.error_estimate + p.error_estimate;
    }
    row.residual = std::abs(row.phi - row.dbar_K - row.K_dbar - row.P);
    report.rows[i] = row;
  });
  for (const auto& row : report.rows) report.max_residual = std::max(report.max_residual, row.residual);
  return report;
}

}  // namespace skop
