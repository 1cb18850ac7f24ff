#pragma once

#include "skop/regularization.hpp"
#include "skop/test_form.hpp"

namespace skop {

/// <1/tau^m, psi dA> as lim over delta of the integral of chi_delta psi / tau^m.
CurrentValue pv_pair(int m, const TestForm& psi, const RegularizationSchedule& schedule, const QuadratureSpec& quad);

/// <1/tau^m, psi dA> computed directly as a principal value (symmetric
/// exclusion around the origin), without the cutoff regularization.
CurrentValue pv_direct(int m, const TestForm& psi, const QuadratureSpec& quad);

/// <dbar(1/tau^m), psi dtau> = lim over delta of the integral of dbar(chi_delta) ^ psi dtau / tau^m.
CurrentValue residue_pair(int m, const TestForm& psi, const RegularizationSchedule& schedule,
                          const QuadratureSpec& quad);

/// Closed form (2 pi i / (m-1)!) d^(m-1)psi/dtau^(m-1) (0) from the exact polynomial.
Complex residue_oracle(int m, const TestForm& psi);

/// Test function on C^2: polynomial in (z1, conj z1, z2, conj z2) times
/// bump(|z1| / R) bump(|z2| / R).
struct AmbientTestFunction {
  ComplexPoly polynomial{4};
  double support_radius = 1.0;
};

struct ProductRule {
  int radial_points = 15;
  int angular_points = 16;
  /// Second cutoff scale is delta^scale_power.
  double scale_power = 2.0;
};

/// <dbar(1/z2^q) ^ dbar(1/z1^p), psi dz1 ^ dz2> by two nested cutoffs at
/// separated scales delta and delta^scale_power.
CurrentValue ch_product_pair(int p, int q, const AmbientTestFunction& psi, const RegularizationSchedule& schedule,
                             const ProductRule& rule = {});

/// (2 pi i)^2 / ((p-1)! (q-1)!) d^(p-1)_z1 d^(q-1)_z2 psi (0, 0).
Complex ch_oracle(int p, int q, const AmbientTestFunction& psi);

/// Mass of the principal value current on {0}: direct PV minus the cutoff limit.
CurrentValue sep_restrict(int m, const TestForm& psi, const RegularizationSchedule& schedule,
                          const QuadratureSpec& quad);

/// Same restriction for the residue current dbar(1/tau^m): the full pairing
/// minus lim over eps of <chi_eps dbar(1/tau^m), psi dtau>.
CurrentValue sep_restrict_residue(int m, const TestForm& psi, const RegularizationSchedule& schedule,
                                  const QuadratureSpec& quad);

}  // namespace skop
