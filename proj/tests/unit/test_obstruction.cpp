#include <gtest/gtest.h>

#include "skop/obstruction.hpp"

namespace skop {
namespace {

RationalPoly tp(const std::string& s) { return parse_polynomial(s, parameter_variables()); }
RationalPoly uni(const std::string& s) { return holomorphic_in_parameter(tp(s)); }
RationalPoly ap(const std::string& s) { return parse_polynomial(s, ambient_variables()); }

TEST(Obstruction, ConjugatePrimitive) {
  EXPECT_EQ(conj_primitive(tp("3*(conj(t)^9 + conj(t)^10)")), tp("3/10*conj(t)^10 + 3/11*conj(t)^11"));
  EXPECT_EQ(conj_primitive(tp("t^2 + 2*t*conj(t)")), tp("t^2*conj(t) + t*conj(t)^2"));
}

TEST(Obstruction, CuspWitness) {
  const JetSystem sys = build_jet_system(uni("t^2"), uni("t^3"), tp("2*conj(t)"), 4);
  const FeasibilityResult r = feasibility(sys);
  ASSERT_EQ(r.verdict, Feasibility::Feasible) << r.detail;
  EXPECT_EQ(r.witness, ap("conj(z1)"));
  EXPECT_TRUE(r.holomorphic_part.is_zero());
}

TEST(Obstruction, WitnessWithHolomorphicPart) {
  // psi = t^3 conj(t)^2, the pullback of z2 conj(z1).
  const JetSystem sys = build_jet_system(uni("t^2"), uni("t^3"), tp("2*t^3*conj(t)"), 6);
  const FeasibilityResult r = feasibility(sys);
  ASSERT_EQ(r.verdict, Feasibility::Feasible) << r.detail;
  const RationalPoly pulled = r.witness.substitute({tp("t^2"), tp("conj(t)^2"), tp("t^3"), tp("conj(t)^3")});
  EXPECT_EQ(pulled, sys.primitive + r.holomorphic_part);
}

TEST(Obstruction, SepticMapCertificate) {
  const JetSystem sys = build_jet_system(uni("t^3"), uni("t^7 + t^8"), tp("3*(conj(t)^9 + conj(t)^10)"), 12);
  const FeasibilityResult r = feasibility(sys);
  ASSERT_EQ(r.verdict, Feasibility::Infeasible) << r.detail;
  ASSERT_EQ(r.certificate.size(), sys.rows.size());
  for (std::size_t j = 0; j < sys.column_count(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < sys.rows.size(); ++i) s += r.certificate[i] * sys.matrix[i][j];
    EXPECT_EQ(s, 0) << "column " << j;
  }
  EXPECT_NE(pair_certificate(sys, r.certificate, sys.primitive), 0);
  EXPECT_EQ(pair_certificate(sys, r.certificate, sys.primitive), r.certificate_value);
}

TEST(Obstruction, InfeasibilityPersistsWithOrder) {
  const MonotonicityReport m = check_monotonicity(uni("t^3"), uni("t^7 + t^8"), tp("3*(conj(t)^9 + conj(t)^10)"), 12, 14);
  EXPECT_TRUE(m.monotone);
  ASSERT_EQ(m.verdicts.size(), 3u);
  for (const auto& [order, v] : m.verdicts) EXPECT_EQ(v, Feasibility::Infeasible) << order;
}

TEST(Obstruction, OrderTooSmallNamesMinimum) {
  try {
    build_jet_system(uni("t^3"), uni("t^7 + t^8"), tp("3*(conj(t)^9 + conj(t)^10)"), 2);
    FAIL() << "expected InvalidInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
    EXPECT_NE(std::string(e.what()).find("ambient order"), std::string::npos) << e.what();
  }
}

TEST(Obstruction, RowAndColumnLayout) {
  const JetSystem sys = build_jet_system(uni("t^2"), uni("t^3"), tp("2*conj(t)"), 4);
  EXPECT_EQ(sys.matrix.size(), sys.rows.size());
  for (const auto& row : sys.matrix) EXPECT_EQ(row.size(), sys.column_count());
  for (std::size_t i = 0; i < sys.rows.size(); ++i)
    EXPECT_EQ(sys.row_index(sys.rows[i][0], sys.rows[i][1]), static_cast<int>(i));
  EXPECT_EQ(sys.row_index(100, 100), -1);
}

}  // namespace
}  // namespace skop
