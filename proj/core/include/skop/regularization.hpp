#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "skop/poly.hpp"

namespace skop {

/// Smooth nondecreasing profile: 0 for x <= 1, 1 for x >= 2, C^3 across
/// both knots (septic smoothstep on [1, 2]).
class Cutoff {
 public:
  double profile(double x) const;
  double derivative(double x) const;

  /// Decreasing bump on [0, inf): 1 on [0, 1/2], 0 on [1, inf).
  double bump(double x) const { return 1.0 - profile(2.0 * x); }
  double bump_derivative(double x) const { return -2.0 * derivative(2.0 * x); }
};

struct CutoffValue {
  double value = 0.0;
  /// Coefficient of dtau-bar in dbar(chi_delta).
  Complex dbar_part{};
};

/// chi_delta(tau) = profile(|tau| / delta) and its dbar coefficient.
CutoffValue cutoff_eval(const Cutoff& cutoff, double delta, Complex tau);

struct RegularizationSchedule {
  double delta_max = 0.1;
  double ratio = 0.5;
  int count = 8;
  int extrapolation_order = 2;

  /// delta_max * ratio^j for j = 0..count-1.
  std::vector<double> deltas() const;
  void validate() const;

  /// Defaults tied to the parameter disc: delta_max = 0.2 * disc_radius.
  static RegularizationSchedule for_disc(double disc_radius);
};

enum class ExclusionPolicy { None, AroundParameterOrigin, AroundTarget };

struct QuadratureSpec {
  /// Radial nodes per panel; rounded up to a multiple of 15 (Gauss-Kronrod 7/15 subpanels).
  int radial_points = 15;
  /// Initial (even) trapezoid size on each ring; doubled adaptively.
  int angular_points = 64;
  double adaptive_tolerance = 1e-10;
  ExclusionPolicy exclusion = ExclusionPolicy::AroundParameterOrigin;
  std::optional<Complex> exclusion_target;
  int max_angular_points = 4096;
  int max_levels = 30;

  void validate() const;
};

struct TracePoint {
  double delta = 0.0;
  Complex value{};
  /// Absolute accuracy of value; values inside it are read as exact zeros.
  double noise = 0.0;
};

/// Result of a regularized-limit computation.
struct CurrentValue {
  Complex value{};
  double error_estimate = 0.0;
  std::vector<TracePoint> trace;
};

/// Integrand density with respect to Lebesgue area (i/2) dtau ^ dtau-bar on
/// the annulus inner_radius <= |tau| <= outer_radius. `knots` lists radii
/// where the density is not smooth; panels are split there.
struct DiscIntegrand {
  std::function<Complex(Complex)> density;
  double outer_radius = 1.0;
  double inner_radius = 0.0;
  std::vector<double> knots;
};

/// Principal value over the disc. Singular points at the origin are treated
/// by angular-first integration with symmetric exclusion radii eps_j -> 0 and
/// extrapolation; other singular points get an excised disc integrated on a
/// local polar grid (they must be at most Cauchy-type, |tau - p|^-1).
/// Throws NonConvergent when the eps-sequence fails the Cauchy criterion.
CurrentValue pv_integrate(const DiscIntegrand& integrand, const QuadratureSpec& quad,
                          std::span<const Complex> singular_set);

/// Richardson extrapolation of value(delta) = L + c1 delta + c2 delta^2 + ...
/// to delta = 0 from a geometric trace (largest delta first). Throws
/// Diverging when |value| grows as delta -> 0 beyond the points' noise.
CurrentValue limit_extrapolate(std::span<const TracePoint> trace, int extrapolation_order);

/// Polynomial extrapolation to h = 0 through the points (h_i, v_i).
Complex extrapolate_to_zero(std::span<const double> h, std::span<const Complex> v);

struct QuadratureNode {
  Complex point{};
  double weight = 0.0;  // includes the polar Jacobian
};

/// Tensor rule on the annulus inner <= |tau| <= outer: Gauss-Legendre in the
/// radius, trapezoid in the angle. Weights integrate against area measure.
std::vector<QuadratureNode> annulus_rule(double inner, double outer, int radial_points,
                                         int angular_points);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace skop
