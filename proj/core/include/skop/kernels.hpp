#pragma once

#include <optional>
#include <span>
#include <vector>

#include "skop/curve.hpp"
#include "skop/regularization.hpp"

namespace skop {

/// Divided differences of a(z1, z2): (zeta1 - z1) g1 + (zeta2 - z2) g2 = a(zeta) - a(z).
/// g1, g2 are polynomials in (zeta1, zeta2, z1, z2).
struct HeferData {
  RationalPoly a;
  RationalPoly g1;
  RationalPoly g2;
  /// The (1,0)-form is normalization * (g1 deta1 + g2 deta2).
  Complex normalization{};

  /// (zeta1 - z1) g1 + (zeta2 - z2) g2 - a(zeta) + a(z); the zero polynomial when consistent.
  RationalPoly identity_defect() const;
};

HeferData hefer(const RationalPoly& a);

/// Variables (zeta1, zeta2, z1, z2) for printing Hefer coefficients.
const VariableSet& hefer_variables();

/// Bochner-Martinelli kernel pieces at (zeta, z) in C^N, N in {1, 2}:
/// b1[j] = conj(eta_j) / (2 pi i |eta|^2) is the coefficient of deta_j in s / (2 pi i |eta|^2)
/// (for N = 1 this is 1 / (2 pi i eta)); for N = 2, b2[j] = conj(eta_j) / ((2 pi i)^2 |eta|^4)
/// are the coefficients of the top-degree term.
struct BMForm {
  std::vector<Complex> b1;
  std::vector<Complex> b2;
};

BMForm bm_form_eval(int n, std::span<const Complex> zeta, std::span<const Complex> z);

/// Compactly supported weight chi(|zeta|): 1 for |zeta| <= inner_radius, 0 for
/// |zeta| >= outer_radius, C^3 in between.
struct WeightSpec {
  int ambient_dimension = 2;
  Cutoff cutoff;
  double inner_radius = 0.75;
  double outer_radius = 0.95;
  bool holomorphic_in_z = true;

  double chi(double norm) const;
  /// d chi / d|zeta|.
  double chi_derivative(double norm) const;
  void validate() const;

  /// inner = 0.75 R, outer = 0.95 R.
  static WeightSpec for_ball(double ball_radius, int ambient_dimension = 2);
};

struct WeightValue {
  double g0 = 0.0;
  /// d chi / d conj(zeta_j).
  std::vector<Complex> dbar_chi;
  /// sigma = sum_j sigma[j] deta_j.
  std::vector<Complex> sigma;
};

WeightValue weight_vikt_eval(const WeightSpec& w, std::span<const Complex> zeta, std::span<const Complex> z);

/// (tau^rs - t^rs) / ((tau^s - t^s)(tau^r - t^r)), evaluated as a product over
/// the rs-th roots of unity that are neither r-th nor s-th roots, divided by (tau - t).
Complex cusp_kernel_ratio(int r, int s, Complex tau, Complex t);
/// cusp_kernel_ratio / tau^((r-1)(s-1)).
Complex cusp_kernel_factor(int r, int s, Complex tau, Complex t);

enum class KernelVariant { CuspClosedForm, GeneralCodimOne, SmoothDisc };
enum class KernelRole { Solution, Projection };

std::string_view to_string(KernelVariant v) noexcept;
std::string_view to_string(KernelRole r) noexcept;

struct KernelSample {
  Complex value{};
  /// 1: g1 / eta2 branch, 2: -g2 / eta1 branch, 0: closed form.
  int branch = 0;
  double relative_eta1 = 0.0;
  double relative_eta2 = 0.0;
};

/// Integrand data for the solution and projection operators on a parameter disc.
///
/// The kernel is k(tau, t) = chi(tau) / (2 pi i) * density(tau, t) dtau, so
/// K phi(t) = -(1/pi) * integral of chi * density * phi dA for phi = phi dtau-bar,
/// and P phi(t) = -(1/pi) * integral of dchi/dtau-bar * density * phi dA.
class KernelSpec {
 public:
  KernelVariant variant() const { return variant_; }
  KernelRole role() const { return role_; }
  const std::optional<CurveSpec>& curve() const { return curve_; }
  const std::optional<Parametrization>& parametrization() const { return param_; }
  const std::optional<HeferData>& hefer_data() const { return hefer_; }
  const WeightSpec& weight() const { return weight_; }
  const StructureForm& structure() const { return structure_; }
  int pole_order() const { return structure_.pole_order; }

  /// Parameter radius of the domain (|gamma| = ball radius on the circle).
  double disc_radius() const { return disc_radius_; }
  /// chi vanishes outside this parameter radius.
  double support_radius() const { return support_radius_; }
  /// Parameter radii where chi stops being 1 and where it reaches 0.
  double weight_inner_knot() const { return inner_knot_; }
  double weight_outer_knot() const { return outer_knot_; }

  Complex density(Complex tau, Complex t) const { return sample(tau, t).value; }
  KernelSample sample(Complex tau, Complex t) const;
  double chi(Complex tau) const;
  Complex chi_dbar(Complex tau) const;
  /// Point on the curve for a parameter value (identity embedding for the disc).
  std::array<Complex, 2> point(Complex tau) const;

  /// Parameter points where the operator integrands are singular for target t.
  std::vector<Complex> singular_points(Complex t) const;

  KernelSpec with_role(KernelRole role) const {
    KernelSpec k = *this;
    k.role_ = role;
    return k;
  }

 private:
  friend KernelSpec curve_kernel_assemble(const CurveSpec&, const WeightSpec&, KernelRole,
                                          std::optional<KernelVariant>);
  friend KernelSpec smooth_disc_kernel(double, const WeightSpec&, KernelRole);

  KernelSample general_sample(Complex tau, Complex t) const;

  KernelVariant variant_ = KernelVariant::SmoothDisc;
  KernelRole role_ = KernelRole::Solution;
  std::optional<CurveSpec> curve_;
  std::optional<Parametrization> param_;
  std::optional<HeferData> hefer_;
  WeightSpec weight_;
  StructureForm structure_;
  double disc_radius_ = 1.0;
  double support_radius_ = 1.0;
  double inner_knot_ = 0.0;
  double outer_knot_ = 0.0;
  int r_ = 0, s_ = 0;
  std::vector<Complex> roots_;  // rs-th roots of unity used by the closed form
  NumericPoly g1_, g2_;         // Hefer coefficients at (zeta1, zeta2, z1, z2)
  NumericPoly dd1_, dd2_;       // (gamma_j(tau) - gamma_j(t)) / (tau - t)
  NumericPoly dd1_abs_, dd2_abs_;  // same with absolute coefficients, for conditioning
};

/// Kernel for a curve. The cusp (or implicit z1^r - z2^s) uses the closed
/// form unless `variant` asks for the general divided-difference assembly.
/// Throws InconsistentBranches if the two branch expressions disagree on
/// sampled well-conditioned pairs.
KernelSpec curve_kernel_assemble(const CurveSpec& spec, const WeightSpec& w, KernelRole role,
                                 std::optional<KernelVariant> variant = std::nullopt);

/// Cauchy kernel on the disc |tau| < radius with weight chi(|tau|).
KernelSpec smooth_disc_kernel(double radius, const WeightSpec& w, KernelRole role);

/// Largest relative disagreement of the two branch expressions over sampled pairs.
double branch_consistency(const KernelSpec& kernel, int samples = 64);

struct ContourValue {
  Complex value{};
  double error_estimate = 0.0;
  int nodes = 0;
};

/// Boundary representation of a strongly holomorphic function phi (polynomial
/// in z1, z2) at the curve point gamma(t): contour integral over |tau| = disc
/// radius of ptilde / (|zeta|^2 - conj(zeta).z) against dzeta2 / (da/dzeta1).
ContourValue stout_boundary_kernel(const CurveSpec& spec, const RationalPoly& phi, Complex t);

}  // namespace skop
