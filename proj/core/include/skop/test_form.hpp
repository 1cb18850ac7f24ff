#pragma once

#include <functional>
#include <vector>

#include "skop/curve.hpp"
#include "skop/regularization.hpp"

namespace skop {

enum class SmoothnessClass { AmbientPullback, IntrinsicSmooth };

/// Coefficient function of a (0,q)-form on the parameter disc, q in {0, 1}:
/// the form is c(tau) for q = 0 and c(tau) dtau-bar for q = 1. Supported in
/// |tau| <= support_radius; `knots` are radii where c is not smooth.
struct SampledForm {
  std::function<Complex(Complex)> coefficient;
  int degree = 0;
  double support_radius = 1.0;
  std::vector<double> knots;
  bool zero = false;
};

/// Polynomial in (t, conj t) times the bump 1 - profile(2|t| / R), which is
/// identically 1 on |t| <= R/2 and vanishes for |t| >= R.
class TestForm {
 public:
  TestForm() = default;
  TestForm(const ComplexPoly& coefficient, int degree, double support_radius,
           SmoothnessClass smoothness = SmoothnessClass::IntrinsicSmooth);
  TestForm(const RationalPoly& coefficient, int degree, double support_radius,
           SmoothnessClass smoothness = SmoothnessClass::IntrinsicSmooth);

  const ComplexPoly& polynomial() const { return poly_; }
  int degree() const { return degree_; }
  double support_radius() const { return support_radius_; }
  SmoothnessClass smoothness() const { return smoothness_; }
  bool is_zero() const { return poly_.is_zero(); }

  double bump(Complex tau) const;
  /// Coefficient of the form (polynomial times bump).
  Complex value(Complex tau) const;
  /// d/d(tau-bar) of the coefficient.
  Complex dbar(Complex tau) const;
  /// d/d(tau) of the coefficient.
  Complex d(Complex tau) const;

  SampledForm sampled() const;
  /// The (0,1)-form dbar of a (0,0) test form.
  SampledForm dbar_form() const;

  TestForm scaled(Complex c) const;

 private:
  ComplexPoly poly_{2};
  int degree_ = 0;
  double support_radius_ = 1.0;
  SmoothnessClass smoothness_ = SmoothnessClass::IntrinsicSmooth;
  Cutoff cutoff_;
  NumericPoly p_, p_dbar_, p_d_;
};

/// Pulls back the ambient (0,1)-form P dz1-bar + Q dz2-bar (P, Q polynomials in
/// z1, conj z1, z2, conj z2) and multiplies by the bump of radius support_radius.
TestForm pullback_form(const Parametrization& param, const RationalPoly& p, const RationalPoly& q,
                       double support_radius);

/// Pullback of an ambient function times the bump.
TestForm pullback_function(const Parametrization& param, const RationalPoly& f, double support_radius);

/// Composition of an ambient polynomial with (gamma, conj gamma), as a polynomial in (t, conj t).
RationalPoly pullback_polynomial(const Parametrization& param, const RationalPoly& ambient);

SampledForm zero_form(int degree);

/// A polynomial in (t, conj t) without bump, as a (0,q)-form on |t| <= radius.
SampledForm polynomial_form(const RationalPoly& coefficient, int degree, double radius);

}  // namespace skop
