#include "skop/test_form.hpp"

#include <cmath>

namespace skop {

TestForm::TestForm(const ComplexPoly& coefficient, int degree, double support_radius, SmoothnessClass smoothness)
    : poly_(coefficient), degree_(degree), support_radius_(support_radius), smoothness_(smoothness) {
  require(coefficient.nvars() == 2, "test form coefficient must be a polynomial in (t, conj t)");
  require(degree == 0 || degree == 1, "test form degree must be 0 or 1");
  require(support_radius > 0.0, "support radius must be positive");
  require(!coefficient.has_negative_exponents(), "test form coefficient must be a polynomial");
  p_ = NumericPoly(poly_);
  p_dbar_ = NumericPoly(poly_.derivative(1));
  p_d_ = NumericPoly(poly_.derivative(0));
}

TestForm::TestForm(const RationalPoly& coefficient, int degree, double support_radius, SmoothnessClass smoothness)
    : TestForm(coefficient.cast<Complex>(), degree, support_radius, smoothness) {}

double TestForm::bump(Complex tau) const { return cutoff_.bump(std::abs(tau) / support_radius_); }

Complex TestForm::value(Complex tau) const {
  const double b = bump(tau);
  if (b == 0.0) return {};
  return p_(tau, std::conj(tau)) * b;
}

Complex TestForm::dbar(Complex tau) const {
  const double r = std::abs(tau);
  const double x = r / support_radius_;
  if (x >= 1.0) return {};
  Complex out = p_dbar_(tau, std::conj(tau)) * cutoff_.bump(x);
  const double db = cutoff_.bump_derivative(x);
  if (db != 0.0) out += p_(tau, std::conj(tau)) * db * tau / (2.0 * r * support_radius_);
  return out;
}

Complex TestForm::d(Complex tau) const {
  const double r = std::abs(tau);
  const double x = r / support_radius_;
  if (x >= 1.0) return {};
  Complex out = p_d_(tau, std::conj(tau)) * cutoff_.bump(x);
  const double db = cutoff_.bump_derivative(x);
  if (db != 0.0) out += p_(tau, std::conj(tau)) * db * std::conj(tau) / (2.0 * r * support_radius_);
  return out;
}

SampledForm TestForm::sampled() const {
  SampledForm f;
  f.degree = degree_;
  f.support_radius = support_radius_;
  f.knots = {0.5 * support_radius_};
  f.zero = is_zero();
  f.coefficient = [self = *this](Complex tau) { return self.value(tau); };
  return f;
}

SampledForm TestForm::dbar_form() const {
  require(degree_ == 0, "dbar of a (0,1)-form on a curve is zero; dbar_form needs a function");
  SampledForm f;
  f.degree = 1;
  f.support_radius = support_radius_;
  f.knots = {0.5 * support_radius_};
  f.zero = is_zero();
  f.coefficient = [self = *this](Complex tau) { return self.dbar(tau); };
  return f;
}

TestForm TestForm::scaled(Complex c) const { return TestForm(poly_ * c, degree_, support_radius_, smoothness_); }

RationalPoly pullback_polynomial(const Parametrization& param, const RationalPoly& ambient) {
  require(ambient.nvars() == 4, "ambient polynomial must be in (z1, conj z1, z2, conj z2)");
  const RationalPoly g1 = param.gamma1.embedded({0}, 2);
  const RationalPoly g1c = param.gamma1.embedded({1}, 2);
  const RationalPoly g2 = param.gamma2.embedded({0}, 2);
  const RationalPoly g2c = param.gamma2.embedded({1}, 2);
  return ambient.substitute({g1, g1c, g2, g2c});
}

TestForm pullback_form(const Parametrization& param, const RationalPoly& p, const RationalPoly& q,
                       double support_radius) {
  require(support_radius <= param.disc_radius * (1.0 + 1e-12), "support radius exceeds the parameter disc");
  // conj(gamma_j'(t)) as a polynomial in conj t.
  const RationalPoly d1c = param.gamma1.derivative(0).embedded({1}, 2);
  const RationalPoly d2c = param.gamma2.derivative(0).embedded({1}, 2);
  const RationalPoly coeff = pullback_polynomial(param, p) * d1c + pullback_polynomial(param, q) * d2c;
  return TestForm(coeff, 1, support_radius, SmoothnessClass::AmbientPullback);
}

TestForm pullback_function(const Parametrization& param, const RationalPoly& f, double support_radius) {
  require(support_radius <= param.disc_radius * (1.0 + 1e-12), "support radius exceeds the parameter disc");
  return TestForm(pullback_polynomial(param, f), 0, support_radius, SmoothnessClass::AmbientPullback);
}

SampledForm zero_form(int degree) {
  SampledForm f;
  f.degree = degree;
  f.zero = true;
  f.coefficient = [](Complex) { return Complex{}; };
  return f;
}

SampledForm polynomial_form(const RationalPoly& coefficient, int degree, double radius) {
  require(coefficient.nvars() == 2, "polynomial in (t, conj t) expected");
  require(degree == 0 || degree == 1, "form degree must be 0 or 1");
  SampledForm f;
  f.degree = degree;
  f.support_radius = radius;
  f.zero = coefficient.is_zero();
  f.coefficient = [p = NumericPoly(coefficient)](Complex tau) { return p(tau, std::conj(tau)); };
  return f;
}

}  // namespace skop
