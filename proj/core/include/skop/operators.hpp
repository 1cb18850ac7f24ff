#pragma once

#include <functional>
#include <string>
#include <vector>

#include "skop/kernels.hpp"
#include "skop/test_form.hpp"

namespace skop {

struct OperatorOptions {
  QuadratureSpec quad;
  /// Worker threads for independent targets; 0 = hardware concurrency.
  int threads = 0;
};

struct Sample {
  Complex t{};
  Complex value{};
  double error = 0.0;
};

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Results are written by
/// index, so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

/// Deterministic targets with r_min <= |t| <= r_max (golden-angle spiral).
std::vector<Complex> default_targets(int count, double r_min, double r_max);

/// K phi at one target (principal value over the parameter disc).
CurrentValue apply_K_at(const KernelSpec& kernel, const SampledForm& phi, Complex t, const QuadratureSpec& quad);
/// P phi at one target (integral over the band where the weight is not constant).
CurrentValue apply_P_at(const KernelSpec& kernel, const SampledForm& phi, Complex t, const QuadratureSpec& quad);

std::vector<Sample> apply_K(const KernelSpec& kernel, const SampledForm& phi, const std::vector<Complex>& targets,
                            const OperatorOptions& options = {});
std::vector<Sample> apply_P(const KernelSpec& kernel, const SampledForm& phi, const std::vector<Complex>& targets,
                            const OperatorOptions& options = {});

/// d/d(conj t) by central differences at steps h and 2h with Richardson correction.
Complex dbar_fd(const std::function<Complex(Complex)>& f, Complex t, double h);

/// Step used for finite-difference dbar: max(1e-3, sqrt(tol)).
double fd_step(const QuadratureSpec& quad);

struct KoppelmanRow {
  Complex t{};
  Complex phi{};
  Complex dbar_K{};  // dbar of K phi (q = 1)
  Complex K_dbar{};  // K of dbar phi (q = 0)
  Complex P{};       // P phi (q = 0)
  double residual = 0.0;
  double quad_error = 0.0;
  bool fd_noisy = false;
};

struct KoppelmanReport {
  int degree = 0;
  double fd_step = 0.0;
  double max_residual = 0.0;
  std::vector<KoppelmanRow> rows;
};

/// Residual |phi - dbar K phi - K dbar phi - P phi| at the targets.
KoppelmanReport verify_koppelman(const KernelSpec& kernel, const TestForm& phi, const std::vector<Complex>& targets,
                                 const OperatorOptions& options = {});

// --- domain of dbar on the curve ------------------------------------------

using ParameterFunction = std::function<Complex(Complex)>;

/// Values of a function on the annuli delta <= |tau| <= 2 delta of a schedule.
struct AnnulusSamples {
  RegularizationSchedule schedule;
  std::vector<std::vector<QuadratureNode>> nodes;
  std::vector<std::vector<Complex>> values;
  /// Size of the largest quantity that entered each value (grows under subtract).
  std::vector<std::vector<double>> scales;
  /// Relative accuracy of the values with respect to their scales; moments
  /// inside the resulting noise floor are treated as zero.
  double relative_noise = 1e-12;
  /// Absolute error bound of the values (e.g. from quadrature).
  double absolute_noise = 0.0;
};

struct AnnulusRule {
  int radial_points = 8;
  int angular_points = 32;
};

AnnulusSamples sample_annuli(const ParameterFunction& u, const RegularizationSchedule& schedule,
                             const AnnulusRule& rule = {}, int threads = 0);

/// Same nodes, values replaced by values - g(node).
AnnulusSamples subtract(const AnnulusSamples& samples, const ParameterFunction& g);

struct MomentTrace {
  int exponent = 0;
  CurrentValue limit;
  double max_abs = 0.0;
  bool diverging = false;
  std::string note;
};

/// Moments I_j(delta) = integral of dbar(chi_delta) ^ u omega tau^j on the annuli;
/// levels lost in the noise floor are reported as exact zeros.
std::vector<TracePoint> moment_trace(const AnnulusSamples& samples, const StructureForm& omega, int exponent);

struct MembershipOptions {
  double absolute_tolerance = 1e-6;
  double relative_tolerance = 1e-3;
};

struct MembershipVerdict {
  bool pass = false;
  std::vector<MomentTrace> moments;
  /// |I(delta_min)| / max |I| for the constant test function (exponent 0).
  double decay_ratio = 0.0;
  std::string detail;
};

/// Tests lim dbar(chi_delta) ^ u omega = 0 against tau^j for j in test_exponents.
MembershipVerdict membership_test(const AnnulusSamples& samples, const StructureForm& omega,
                                  const std::vector<int>& test_exponents, const MembershipOptions& options = {});

struct ResidueCoefficients {
  std::vector<Complex> c;
  std::vector<double> error;
  std::vector<bool> masked;  // true: declared zero
  int j_max = 0;
  bool order_warning = false;  // the last coefficient is not negligible
};

struct ExtractOptions {
  double mask_tolerance = 1e-6;
};

/// c_j = lim dbar(chi_delta) ^ u omega tau^j / (2 pi i), j = 0..j_max.
ResidueCoefficients extract_residue_coeffs(const AnnulusSamples& samples, const StructureForm& omega, int j_max,
                                           const ExtractOptions& options = {});

/// Laurent terms (exponent, coefficient) of the correction sum_j c_j tau^(k-j-1) / (const * f).
/// Only meaningful as a finite list when f is constant; otherwise the unit is applied pointwise.
std::vector<std::pair<int, Complex>> correction_terms(const ResidueCoefficients& coeffs, const StructureForm& omega);

/// u2(tau) = sum over unmasked j of c_j tau^(k-j-1) / (constant_factor f(tau)).
ParameterFunction correction_function(const ResidueCoefficients& coeffs, const StructureForm& omega);

/// u = u1 - u2.
ParameterFunction correct_solution(const ParameterFunction& u1, const ResidueCoefficients& coeffs,
                                   const StructureForm& omega);

struct SolveOptions {
  OperatorOptions op;
  RegularizationSchedule schedule{.delta_max = 0.0};  // delta_max <= 0 means the default for the disc
  AnnulusRule annulus;
  int j_max = -1;  // < 0: pole order + 5
  int sample_count = 12;
  MembershipOptions membership;
  ExtractOptions extract;
};

struct SolveReport {
  std::vector<Sample> raw_solution;
  ResidueCoefficients coefficients;
  std::vector<std::pair<int, Complex>> correction;
  MembershipVerdict membership_before;
  MembershipVerdict membership_after;
  std::vector<std::pair<Complex, double>> dbar_residuals;
  double max_dbar_residual = 0.0;
  std::vector<int> test_exponents;
  bool pass = false;
};

/// dbar u = mu on the curve: u1 = K mu, Dirac coefficients of the boundary
/// current, meromorphic correction, and verification.
SolveReport solve_dbar(const KernelSpec& kernel, const SampledForm& mu, const SolveOptions& options = {});

}  // namespace skop
