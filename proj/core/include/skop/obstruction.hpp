#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "skop/curve.hpp"

namespace skop {

/// Finite-order Taylor system for f(gamma, conj gamma) = psi + h with h
/// holomorphic in the parameter and d(psi)/d(conj t) = mu. Columns are the
/// ambient monomials z1^a conj(z1)^b z2^c conj(z2)^d (a+b+c+d <= ambient_order)
/// followed by the free holomorphic columns t^m; rows are the parameter jets
/// t^m conj(t)^n with m+n <= parameter_order. Everything is exact.
struct JetSystem {
  RationalPoly gamma1;
  RationalPoly gamma2;
  int ambient_order = 0;
  int parameter_order = 0;

  std::vector<std::array<int, 4>> ambient_columns;
  std::vector<int> holomorphic_columns;
  std::vector<std::array<int, 2>> rows;
  /// matrix[row][column], ambient columns first.
  std::vector<std::vector<Rational>> matrix;
  std::vector<Rational> target;
  /// The particular solution psi as a polynomial in (t, conj t).
  RationalPoly primitive;

  std::size_t column_count() const { return ambient_columns.size() + holomorphic_columns.size(); }
  int row_index(int m, int n) const;
};

/// Antiholomorphic primitive: the polynomial psi with d(psi)/d(conj t) = mu,
/// integrating term by term in conj(t).
RationalPoly conj_primitive(const RationalPoly& mu);

/// Jet system for the parametrization (gamma1, gamma2) (univariate, vanishing
/// at 0) and mu in (t, conj t). The parameter order defaults to the largest
/// order at which the ambient jet of order D determines the pullback, capped at
/// deg(psi) + the larger leading exponent. Throws InvalidInput if D is too small
/// to reach the target, naming the required minimum.
JetSystem build_jet_system(const RationalPoly& gamma1, const RationalPoly& gamma2, const RationalPoly& mu,
                           int ambient_order, std::optional<int> parameter_order = std::nullopt);

enum class Feasibility { Feasible, Infeasible, Inconclusive };

std::string_view to_string(Feasibility f) noexcept;

struct FeasibilityResult {
  Feasibility verdict = Feasibility::Inconclusive;
  int rank = 0;
  /// Jet solution (ambient part, in ambient_variables) when feasible.
  RationalPoly witness;
  /// Holomorphic part h(t) of the jet solution (in parameter_variables).
  RationalPoly holomorphic_part;
  /// Left null vector y (indexed by rows) with y^T A = 0 and y^T target != 0.
  std::vector<Rational> certificate;
  /// y as a polynomial sum y_(m,n) t^m conj(t)^n (pairing = coefficientwise product).
  RationalPoly certificate_poly;
  Rational certificate_value = 0;
  std::string detail;
};

/// Exact rank test of target in the column span. Feasible means the jet witness
/// is an exact identity f(gamma, conj gamma) = psi + h; a witness that only
/// matches up to the truncation order is reported Inconclusive.
FeasibilityResult feasibility(const JetSystem& sys);

/// Sum over rows of y_(m,n) times the coefficient of t^m conj(t)^n in p.
Rational pair_certificate(const JetSystem& sys, const std::vector<Rational>& y, const RationalPoly& p);

struct MonotonicityReport {
  bool monotone = true;
  std::vector<std::pair<int, Feasibility>> verdicts;  // (ambient order, verdict)
};

/// Re-solves the system for ambient orders from..to with the parameter
/// truncation of order `from` held fixed; an Infeasible verdict must persist.
MonotonicityReport check_monotonicity(const RationalPoly& gamma1, const RationalPoly& gamma2, const RationalPoly& mu,
                                      int from, int to);

}  // namespace skop
