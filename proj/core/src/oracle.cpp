#include <numbers>

#include "skop/residue.hpp"

namespace skop {

namespace {
const Complex kTwoPiI{0.0, 2.0 * std::numbers::pi};
}

Complex residue_oracle(int m, const TestForm& psi) {
  require(m >= 1, "residue order must be >= 1");
  // d^(m-1)/dtau^(m-1) of tau^(m-1) at 0 is (m-1)!, which cancels the prefactor.
  return kTwoPiI * psi.polynomial().coefficient({m - 1, 0});
}

Complex ch_oracle(int p, int q, const AmbientTestFunction& psi) {
  require(p >= 1 && q >= 1, "residue orders must be >= 1");
  return kTwoPiI * kTwoPiI * psi.polynomial.coefficient({p - 1, 0, q - 1, 0});
}

}  // namespace skop
