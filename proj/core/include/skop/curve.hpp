#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skop/poly.hpp"

namespace skop {

enum class CurveKind { MonomialCusp, ParametrizedMap, Implicit };

std::string_view to_string(CurveKind kind) noexcept;

/// A plane curve germ with a single singular point at the origin, restricted
/// to the ball of radius ball_radius.
///
/// Polynomials in the parameter are univariate (one variable t); defining
/// polynomials use the two holomorphic ambient variables (z1, z2).
struct CurveSpec {
  CurveKind kind = CurveKind::MonomialCusp;
  int r = 0;
  int s = 0;
  RationalPoly gamma1;
  RationalPoly gamma2;
  std::optional<RationalPoly> defining;
  double ball_radius = 1.0;
  bool smooth = false;

  /// The defining polynomial a(z1, z2); throws if it is not known.
  RationalPoly defining_polynomial() const;
  /// Text form accepted by parse_curve.
  std::string descriptor() const;
};

/// z1^r - z2^s. r = 1 is accepted and marked smooth; gcd(r, s) != 1 is rejected.
CurveSpec make_cusp(int r, int s, double ball_radius = 1.0);

/// Explicit map t -> (gamma1(t), gamma2(t)). When `defining` is absent and
/// gamma1 is a monomial, the defining equation is computed by elimination.
CurveSpec make_parametrized(const RationalPoly& gamma1, const RationalPoly& gamma2, double ball_radius = 1.0,
                            std::optional<RationalPoly> defining = std::nullopt);

/// Implicit curve; only c * (z1^r - z2^s) is supported.
CurveSpec make_implicit(const RationalPoly& a, double ball_radius = 1.0);

/// Descriptors: "cusp:2,3", "map:t^3,t^7+t^8", "implicit:z1^2-z2^3".
CurveSpec parse_curve(std::string_view descriptor, double ball_radius = 1.0);

/// Defining polynomial of the image of t -> (c t^n, g(t)), via power sums of
/// g over the n-th roots of unity. Returns nullopt if gamma1 is not a monomial.
std::optional<RationalPoly> eliminate_monomial_map(const RationalPoly& gamma1, const RationalPoly& gamma2);

/// Univariate polynomial in t from a parsed (t, conj t) polynomial; rejects conj(t).
RationalPoly holomorphic_in_parameter(const RationalPoly& p);

struct Parametrization {
  RationalPoly gamma1;
  RationalPoly gamma2;
  double disc_radius = 0.0;

  NumericPoly g1, g2, dg1, dg2;

  std::array<Complex, 2> point(Complex tau) const { return {g1(tau), g2(tau)}; }
  std::array<Complex, 2> derivative(Complex tau) const { return {dg1(tau), dg2(tau)}; }
  /// max over |tau| = rho of |gamma(tau)|.
  double max_norm_on_circle(double rho) const;
  /// Parameter radius where the circle maximum of |gamma| equals `radius`.
  double radius_for(double radius) const;
};

Parametrization make_parametrization(const RationalPoly& gamma1, const RationalPoly& gamma2, double ball_radius);
Parametrization normalize(const CurveSpec& spec);

/// omega = constant_factor * f(tau) dtau / tau^pole_order with
/// f = numerator / denominator, f(0) != 0. For cusps f == 1.
struct StructureForm {
  RationalPoly numerator;
  RationalPoly denominator;
  int pole_order = 0;
  Complex constant_factor{};

  NumericPoly num, den;

  Complex unit(Complex tau) const { return num(tau) / den(tau); }
  /// Coefficient of dtau.
  Complex coefficient(Complex tau) const { return constant_factor * unit(tau) * ipow(tau, -pole_order); }
  bool unit_is_constant() const { return numerator.total_degree() == 0 && denominator.total_degree() == 0; }
};

StructureForm structure_form(const CurveSpec& spec);

/// Distance of gamma(t) to the singular point; +infinity for smooth curves.
double sing_distance(const CurveSpec& spec, Complex t);

/// Valuations (orders in t) of the pullbacks of holomorphic functions, up to max_value.
std::vector<int> semigroup_elements(const CurveSpec& spec, int max_value);

/// Checks generic injectivity of the map on the parameter disc by sampling;
/// throws InvalidInput if two sampled parameters share an image point.
void check_injective(const Parametrization& param);

}  // namespace skop
