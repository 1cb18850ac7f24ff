#include <algorithm>
#include <cmath>
#include <numbers>

#include "skop/kernels.hpp"

namespace skop {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kTwoPiI{0.0, 2.0 * kPi};
constexpr double kBranchThreshold = 1e-3;

// (p(tau) - p(t)) / (tau - t) as a polynomial in (tau, t).
RationalPoly divided_difference(const RationalPoly& p, bool absolute) {
  RationalPoly out(2);
  for (const auto& [e, c] : p.terms()) {
    const Rational coeff = absolute && c < 0 ? Rational(-c) : c;
    for (int i = 0; i < e[0]; ++i) out.add_term({i, e[0] - 1 - i}, coeff);
  }
  return out;
}

double min_norm_on_circle(const Parametrization& p, double rho) {
  constexpr int kSamples = 1024;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kSamples; ++k) {
    const auto z = p.point(std::polar(rho, 2.0 * kPi * k / kSamples));
    best = std::min(best, std::sqrt(std::norm(z[0]) + std::norm(z[1])));
  }
  return best;
}

// Smallest parameter radius beyond which |gamma| stays >= radius on whole circles.
double radius_where_min_reaches(const Parametrization& p, double radius) {
  double lo = 0.0, hi = p.disc_radius;
  if (min_norm_on_circle(p, hi) < radius)
    fail(ErrorKind::Unsupported, "weight support is not contained in the parameter disc");
  while (hi - lo > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    (min_norm_on_circle(p, mid) < radius ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

std::string_view to_string(KernelVariant v) noexcept {
  switch (v) {
    case KernelVariant::CuspClosedForm: return "cusp-closed-form";
    case KernelVariant::GeneralCodimOne: return "general";
    case KernelVariant::SmoothDisc: return "smooth-disc";
  }
  return "unknown";
}

std::string_view to_string(KernelRole r) noexcept {
  return r == KernelRole::Solution ? "k" : "p";
}

double WeightSpec::chi(double norm) const {
  return 1.0 - cutoff.profile(1.0 + (norm - inner_radius) / (outer_radius - inner_radius));
}

double WeightSpec::chi_derivative(double norm) const {
  const double width = outer_radius - inner_radius;
  return -cutoff.derivative(1.0 + (norm - inner_radius) / width) / width;
}

void WeightSpec::validate() const {
  require(ambient_dimension == 1 || ambient_dimension == 2, "weight: ambient dimension must be 1 or 2");
  require(inner_radius > 0.0 && outer_radius > inner_radius, "weight: need 0 < inner_radius < outer_radius");
}

WeightSpec WeightSpec::for_ball(double ball_radius, int ambient_dimension) {
  WeightSpec w;
  w.ambient_dimension = ambient_dimension;
  w.inner_radius = 0.75 * ball_radius;
  w.outer_radius = 0.95 * ball_radius;
  return w;
}

WeightValue weight_vikt_eval(const WeightSpec& w, std::span<const Complex> zeta, std::span<const Complex> z) {
  w.validate();
  const std::size_t n = static_cast<std::size_t>(w.ambient_dimension);
  require(zeta.size() == n && z.size() == n, "weight: point dimension mismatch");
  double norm2 = 0.0;
  Complex pairing{};
  for (std::size_t j = 0; j < n; ++j) {
    norm2 += std::norm(zeta[j]);
    pairing += std::conj(zeta[j]) * z[j];
  }
  const double norm = std::sqrt(norm2);
  WeightValue out;
  out.g0 = w.chi(norm);
  const double dchi = w.chi_derivative(norm);
  out.dbar_chi.assign(n, Complex{});
  if (dchi != 0.0 && norm > 0.0)
    for (std::size_t j = 0; j < n; ++j) out.dbar_chi[j] = dchi * zeta[j] / (2.0 * norm);
  const Complex den = norm2 - pairing;
  out.sigma.assign(n, Complex{});
  if (std::abs(den) <= 1e-14 * std::max(norm2, 1e-300)) {
    if (dchi != 0.0) fail(ErrorKind::DenominatorVanishes, "weight: |zeta|^2 - conj(zeta).z vanishes");
    return out;
  }
  for (std::size_t j = 0; j < n; ++j) out.sigma[j] = std::conj(zeta[j]) / (kTwoPiI * den);
  return out;
}

Complex cusp_kernel_ratio(int r, int s, Complex tau, Complex t) {
  require(r >= 1 && s >= 1, "cusp exponents must be positive");
  if (tau == t) fail(ErrorKind::PoleAtDiagonal, "cusp kernel evaluated on the diagonal");
  const int n = r * s;
  Complex prod(1.0);
  for (int j = 1; j < n; ++j) {
    if (j % s == 0 || j % r == 0) continue;
    prod *= tau - std::polar(1.0, 2.0 * kPi * j / n) * t;
  }
  return prod / (tau - t);
}

Complex cusp_kernel_factor(int r, int s, Complex tau, Complex t) {
  return cusp_kernel_ratio(r, s, tau, t) * ipow(tau, -(r - 1) * (s - 1));
}

std::array<Complex, 2> KernelSpec::point(Complex tau) const {
  if (param_) return param_->point(tau);
  return {tau, Complex{}};
}

double KernelSpec::chi(Complex tau) const {
  if (!param_) return weight_.chi(std::abs(tau));
  const auto z = param_->point(tau);
  return weight_.chi(std::sqrt(std::norm(z[0]) + std::norm(z[1])));
}

Complex KernelSpec::chi_dbar(Complex tau) const {
  if (!param_) {
    const double r = std::abs(tau);
    const double d = weight_.chi_derivative(r);
    return (d == 0.0 || r == 0.0) ? Complex{} : d * tau / (2.0 * r);
  }
  const auto z = param_->point(tau);
  const double norm = std::sqrt(std::norm(z[0]) + std::norm(z[1]));
  const double d = weight_.chi_derivative(norm);
  if (d == 0.0 || norm == 0.0) return {};
  const auto dz = param_->derivative(tau);
  return d * (z[0] * std::conj(dz[0]) + z[1] * std::conj(dz[1])) / (2.0 * norm);
}

KernelSample KernelSpec::general_sample(Complex tau, Complex t) const {
  if (tau == t) fail(ErrorKind::PoleAtDiagonal, "kernel evaluated on the diagonal");
  const auto zeta = param_->point(tau);
  const auto z = param_->point(t);
  const Complex args[4] = {zeta[0], zeta[1], z[0], z[1]};
  const Complex d1 = dd1_(tau, t);
  const Complex d2 = dd2_(tau, t);
  const double a1 = std::abs(dd1_abs_(std::abs(tau), std::abs(t)));
  const double a2 = std::abs(dd2_abs_(std::abs(tau), std::abs(t)));
  KernelSample out;
  out.relative_eta1 = a1 > 0.0 ? std::abs(d1) / a1 : 0.0;
  out.relative_eta2 = a2 > 0.0 ? std::abs(d2) / a2 : 0.0;
  const bool use_first = out.relative_eta2 >= kBranchThreshold || out.relative_eta2 >= out.relative_eta1;
  Complex hk;
  if (use_first) {
    if (d2 == Complex{}) fail(ErrorKind::PoleAtDiagonal, "kernel: both branch denominators vanish");
    hk = g1_(std::span<const Complex>(args, 4)) / ((tau - t) * d2);
    out.branch = 1;
  } else {
    if (d1 == Complex{}) fail(ErrorKind::PoleAtDiagonal, "kernel: both branch denominators vanish");
    hk = -g2_(std::span<const Complex>(args, 4)) / ((tau - t) * d1);
    out.branch = 2;
  }
  // dzeta2 / (da/dzeta1) pulled back = omega / (-2 pi i).
  out.value = hk * structure_.coefficient(tau) / (-kTwoPiI);
  return out;
}

KernelSample KernelSpec::sample(Complex tau, Complex t) const {
  switch (variant_) {
    case KernelVariant::SmoothDisc: {
      if (tau == t) fail(ErrorKind::PoleAtDiagonal, "Cauchy kernel evaluated on the diagonal");
      KernelSample out;
      out.value = 1.0 / (tau - t);
      return out;
    }
    case KernelVariant::CuspClosedForm: {
      if (tau == t) fail(ErrorKind::PoleAtDiagonal, "cusp kernel evaluated on the diagonal");
      Complex prod(1.0);
      for (const Complex xi : roots_) prod *= tau - xi * t;
      KernelSample out;
      out.value = prod / (tau - t) * ipow(tau, -structure_.pole_order);
      return out;
    }
    case KernelVariant::GeneralCodimOne: return general_sample(tau, t);
  }
  fail(ErrorKind::InvalidInput, "unknown kernel variant");
}

std::vector<Complex> KernelSpec::singular_points(Complex t) const {
  if (variant_ == KernelVariant::SmoothDisc) return {t};
  if (t == Complex{}) return {Complex{}};
  return {Complex{}, t};
}

KernelSpec curve_kernel_assemble(const CurveSpec& spec, const WeightSpec& w, KernelRole role,
                                 std::optional<KernelVariant> variant) {
  w.validate();
  require(w.ambient_dimension == 2, "curve kernels need a weight on C^2");
  require(w.outer_radius <= spec.ball_radius, "weight support must lie in the ball");
  const bool monomial = spec.kind == CurveKind::MonomialCusp || spec.kind == CurveKind::Implicit;
  KernelSpec k;
  k.variant_ = variant.value_or(monomial ? KernelVariant::CuspClosedForm : KernelVariant::GeneralCodimOne);
  require(k.variant_ != KernelVariant::SmoothDisc, "use smooth_disc_kernel for the disc");
  require(k.variant_ != KernelVariant::CuspClosedForm || monomial,
          "closed-form kernel is only available for z1^r - z2^s");
  k.role_ = role;
  k.curve_ = spec;
  k.param_ = normalize(spec);
  k.structure_ = structure_form(spec);
  k.hefer_ = hefer(spec.defining_polynomial());
  k.weight_ = w;
  k.disc_radius_ = k.param_->disc_radius;
  k.inner_knot_ = k.param_->radius_for(w.inner_radius);
  k.outer_knot_ = k.param_->radius_for(w.outer_radius);
  k.support_radius_ = std::max(k.outer_knot_, radius_where_min_reaches(*k.param_, w.outer_radius));
  k.r_ = spec.r;
  k.s_ = spec.s;
  if (monomial) {
    const int n = spec.r * spec.s;
    for (int j = 1; j < n; ++j)
      if (j % spec.s != 0 && j % spec.r != 0) k.roots_.push_back(std::polar(1.0, 2.0 * kPi * j / n));
  }
  k.g1_ = NumericPoly(k.hefer_->g1);
  k.g2_ = NumericPoly(k.hefer_->g2);
  k.dd1_ = NumericPoly(divided_difference(spec.gamma1, false));
  k.dd2_ = NumericPoly(divided_difference(spec.gamma2, false));
  k.dd1_abs_ = NumericPoly(divided_difference(spec.gamma1, true));
  k.dd2_abs_ = NumericPoly(divided_difference(spec.gamma2, true));
  if (k.variant_ == KernelVariant::GeneralCodimOne) {
    const double defect = branch_consistency(k);
    if (defect > 1e-8)
      fail(ErrorKind::InconsistentBranches,
           "kernel branches disagree on the curve (relative defect " + std::to_string(defect) + ")");
  }
  return k;
}

KernelSpec smooth_disc_kernel(double radius, const WeightSpec& w, KernelRole role) {
  w.validate();
  require(radius > 0.0, "disc radius must be positive");
  require(w.outer_radius <= radius, "weight support must lie in the disc");
  KernelSpec k;
  k.variant_ = KernelVariant::SmoothDisc;
  k.role_ = role;
  k.weight_ = w;
  k.weight_.ambient_dimension = 1;
  k.structure_.numerator = RationalPoly::constant(1, Rational(1));
  k.structure_.denominator = RationalPoly::constant(1, Rational(1));
  k.structure_.num = NumericPoly(k.structure_.numerator);
  k.structure_.den = NumericPoly(k.structure_.denominator);
  k.structure_.pole_order = 0;
  k.structure_.constant_factor = -kTwoPiI;
  k.disc_radius_ = radius;
  k.inner_knot_ = w.inner_radius;
  k.outer_knot_ = w.outer_radius;
  k.support_radius_ = w.outer_radius;
  return k;
}

double branch_consistency(const KernelSpec& kernel, int samples) {
  const auto& param = kernel.parametrization();
  const auto& h = kernel.hefer_data();
  if (!param || !h) return 0.0;
  const NumericPoly g1(h->g1), g2(h->g2);
  const double disc = param->disc_radius;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    // Deterministic scattered pairs in the disc.
    const Complex tau = std::polar(disc * (0.1 + 0.8 * std::fmod(0.6180339887 * (i + 1), 1.0)), 2.3999632 * i);
    const Complex t = std::polar(disc * (0.1 + 0.8 * std::fmod(0.7548776662 * (i + 1), 1.0)), 1.7 + 3.883 * i);
    const auto zeta = param->point(tau);
    const auto z = param->point(t);
    const Complex eta1 = zeta[0] - z[0];
    const Complex eta2 = zeta[1] - z[1];
    if (std::abs(eta1) < kBranchThreshold * (std::abs(zeta[0]) + std::abs(z[0]))) continue;
    if (std::abs(eta2) < kBranchThreshold * (std::abs(zeta[1]) + std::abs(z[1]))) continue;
    const Complex args[4] = {zeta[0], zeta[1], z[0], z[1]};
    const Complex b1 = g1(std::span<const Complex>(args, 4)) / eta2;
    const Complex b2 = -g2(std::span<const Complex>(args, 4)) / eta1;
    const double scale = std::max({std::abs(b1), std::abs(b2), 1e-300});
    worst = std::max(worst, std::abs(b1 - b2) / scale);
  }
  return worst;
}

ContourValue stout_boundary_kernel(const CurveSpec& spec, const RationalPoly& phi, Complex t) {
  require(phi.nvars() == 2, "phi must be a polynomial in (z1, z2)");
  const Parametrization param = normalize(spec);
  const StructureForm omega = structure_form(spec);
  const HeferData h = hefer(spec.defining_polynomial());
  const NumericPoly g1(h.g1), g2(h.g2), f(phi);
  const double rho = param.disc_radius;
  require(std::abs(t) < rho, "target must lie inside the parameter disc");
  const auto z = param.point(t);

  auto term = [&](Complex tau) {
    const auto zeta = param.point(tau);
    const Complex args[4] = {zeta[0], zeta[1], z[0], z[1]};
    const Complex ptilde = g1(std::span<const Complex>(args, 4)) * std::conj(zeta[1]) -
                           g2(std::span<const Complex>(args, 4)) * std::conj(zeta[0]);
    const Complex den = std::conj(zeta[0]) * (zeta[0] - z[0]) + std::conj(zeta[1]) * (zeta[1] - z[1]);
    if (std::abs(den) == 0.0) fail(ErrorKind::DenominatorVanishes, "boundary kernel denominator vanishes");
    const Complex form = omega.coefficient(tau) / (-kTwoPiI);
    return tau * ptilde / den * form * f(zeta[0], zeta[1]);
  };

  // (1 / 2 pi i) oint F dtau = mean over the circle of tau F(tau).
  int n = 128;
  Complex sum{};
  double abs_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const Complex v = term(std::polar(rho, 2.0 * kPi * j / n));
    sum += v;
    abs_sum += std::abs(v);
  }
  Complex value = sum / double(n);
  double err = std::numeric_limits<double>::infinity();
  while (n < (1 << 16)) {
    Complex mid{};
    for (int j = 0; j < n; ++j) {
      const Complex v = term(std::polar(rho, 2.0 * kPi * (j + 0.5) / n));
      mid += v;
      abs_sum += std::abs(v);
    }
    sum += mid;
    n *= 2;
    const Complex next = sum / double(n);
    err = std::abs(next - value);
    value = next;
    if (err <= 1e-14 * abs_sum / n) break;
  }
  return {value, err, n};
}

}  // namespace skop
