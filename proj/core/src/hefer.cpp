#include <numbers>

#include "skop/kernels.hpp"

namespace skop {

namespace {

// Variables of the Hefer ring.
constexpr std::size_t kZeta1 = 0, kZeta2 = 1, kZ1 = 2, kZ2 = 3;

RationalPoly mono(int zeta1, int zeta2, int z1, int z2) {
  RationalPoly p(4);
  p.add_term({zeta1, zeta2, z1, z2}, Rational(1));
  return p;
}

}  // namespace

const VariableSet& hefer_variables() {
  static const VariableSet vars{{"zeta1", "zeta2", "z1", "z2"}, {-1, -1, -1, -1}, {}};
  return vars;
}

HeferData hefer(const RationalPoly& a) {
  require(a.nvars() == 2, "hefer: polynomial in (z1, z2) expected");
  require(!a.has_negative_exponents(), "hefer: polynomial expected");
  HeferData h;
  h.a = a;
  h.g1 = RationalPoly(4);
  h.g2 = RationalPoly(4);
  h.normalization = Complex(1.0) / Complex(0.0, 2.0 * std::numbers::pi);
  for (const auto& [e, c] : a.terms()) {
    const int alpha = e[0];
    const int beta = e[1];
    // zeta1^alpha zeta2^beta - z1^alpha z2^beta
    //   = (zeta1 - z1) [sum_i zeta1^i z1^(alpha-1-i)] zeta2^beta
    //   + (zeta2 - z2) z1^alpha [sum_j zeta2^j z2^(beta-1-j)]
    for (int i = 0; i < alpha; ++i) h.g1 += mono(i, beta, alpha - 1 - i, 0) * c;
    for (int j = 0; j < beta; ++j) h.g2 += mono(0, j, alpha, beta - 1 - j) * c;
  }
  return h;
}

RationalPoly HeferData::identity_defect() const {
  const RationalPoly eta1 = RationalPoly::variable(4, kZeta1) - RationalPoly::variable(4, kZ1);
  const RationalPoly eta2 = RationalPoly::variable(4, kZeta2) - RationalPoly::variable(4, kZ2);
  const RationalPoly a_zeta = a.embedded({kZeta1, kZeta2}, 4);
  const RationalPoly a_z = a.embedded({kZ1, kZ2}, 4);
  return eta1 * g1 + eta2 * g2 - a_zeta + a_z;
}

BMForm bm_form_eval(int n, std::span<const Complex> zeta, std::span<const Complex> z) {
  require(n == 1 || n == 2, "bm_form_eval: dimension must be 1 or 2");
  require(zeta.size() == static_cast<std::size_t>(n) && z.size() == static_cast<std::size_t>(n),
          "bm_form_eval: point dimension mismatch");
  const Complex two_pi_i(0.0, 2.0 * std::numbers::pi);
  double norm2 = 0.0;
  std::vector<Complex> eta(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < eta.size(); ++j) {
    eta[j] = zeta[j] - z[j];
    norm2 += std::norm(eta[j]);
  }
  if (norm2 == 0.0) fail(ErrorKind::PoleAtDiagonal, "Bochner-Martinelli form evaluated on the diagonal");
  BMForm out;
  for (const Complex e : eta) out.b1.push_back(std::conj(e) / (two_pi_i * norm2));
  if (n == 2)
    for (const Complex e : eta) out.b2.push_back(std::conj(e) / (two_pi_i * two_pi_i * norm2 * norm2));
  return out;
}

}  // namespace skop
