#include "skop_selftest/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "skop/obstruction.hpp"
#include "skop/operators.hpp"
#include "skop/residue.hpp"

namespace skop::selftest {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;
const Complex kTwoPiI{0.0, 2.0 * kPi};

RationalPoly param_poly(const std::string& text) { return parse_polynomial(text, parameter_variables()); }
RationalPoly ambient_poly(const std::string& text) { return parse_polynomial(text, ambient_variables()); }

double relative_error(Complex value, Complex oracle) {
  return std::abs(value - oracle) / std::max(std::abs(oracle), 1.0);
}

std::string complex_text(Complex z) {
  std::ostringstream os;
  os.precision(10);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

json record(const std::string& command, json params, Complex value, double error) {
  json r;
  r["command"] = command;
  r["params"] = std::move(params);
  r["value_re"] = value.real();
  r["value_im"] = value.imag();
  r["error"] = error;
  return r;
}

struct Context {
  OperatorOptions op;
};

class Tracker {
 public:
  Tracker(int id, double tolerance) {
    result_.id = id;
    result_.name = criterion_name(id);
    result_.tolerance = tolerance;
  }

  void observe(double error) {
    result_.metric = std::max(result_.metric, error);
    if (!(error <= result_.tolerance)) ok_ = false;  // NaN fails
  }
  void require_true(bool condition) { ok_ = ok_ && condition; }
  void add(json r) { result_.records.push_back(std::move(r)); }

  CriterionResult finish(std::string summary) {
    result_.pass = ok_;
    result_.summary = std::move(summary);
    return std::move(result_);
  }

 private:
  CriterionResult result_;
  bool ok_ = true;
};

// Criterion 1: the smooth disc, where P is the Cauchy integral.
CriterionResult smooth_disc(const Context& ctx) {
  Tracker tr(1, 1e-6);
  const auto kernel = smooth_disc_kernel(1.0, WeightSpec::for_ball(1.0, 1), KernelRole::Projection);
  const auto targets = default_targets(10, 0.2, 0.6);
  for (int k = 0; k <= 4; ++k) {
    const auto phi = polynomial_form(param_poly("t^" + std::to_string(k)), 0, 1.0);
    double worst = 0.0;
    for (const Sample& s : apply_P(kernel, phi, targets, ctx.op)) {
      const double e = relative_error(s.value, std::pow(s.t, k));
      worst = std::max(worst, e);
      tr.add(record("reproduce", {{"kernel", "disc"}, {"phi", "t^" + std::to_string(k)}, {"t_re", s.t.real()},
                                  {"t_im", s.t.imag()}},
                    s.value, e));
    }
    tr.observe(worst);
  }
  const TestForm phi(param_poly("conj(t)"), 0, 0.9);
  const KoppelmanReport rep = verify_koppelman(kernel, phi, targets, ctx.op);
  for (const auto& row : rep.rows)
    tr.add(record("koppelman", {{"kernel", "disc"}, {"phi", "conj(t)*bump"}, {"t_re", row.t.real()},
                                {"t_im", row.t.imag()}},
                  row.phi, row.residual));
  tr.observe(rep.max_residual);
  return tr.finish("P t^k (k<=4) and Koppelman residual for conj(t)*bump at 10 points");
}

// Criterion 2: residue pairing against the Taylor coefficient.
CriterionResult residue_oracle_check(const Context&) {
  Tracker tr(2, 1e-4);
  const RegularizationSchedule schedule;
  const QuadratureSpec quad;
  for (int m = 1; m <= 5; ++m) {
    for (int a = 0; a <= 4; ++a) {
      for (int b = 0; b <= 4; ++b) {
        const std::string text = "t^" + std::to_string(a) + "*conj(t)^" + std::to_string(b);
        const TestForm psi(param_poly(text), 0, 1.0);
        // The bump is 1 near 0, so only t^(m-1) survives.
        const Complex oracle = (a == m - 1 && b == 0) ? kTwoPiI : Complex{};
        const CurrentValue v = residue_pair(m, psi, schedule, quad);
        const double e = relative_error(v.value, oracle);
        tr.observe(e);
        tr.add(record("residue", {{"m", m}, {"psi", text}, {"oracle", complex_text(oracle)}}, v.value, e));
      }
    }
  }
  return tr.finish("125 pairings dbar(1/t^m) vs 2 pi i times the Taylor coefficient");
}

// Criterion 3: Coleff-Herrera product against the tensor formula.
CriterionResult coleff_herrera(const Context&) {
  Tracker tr(3, 1e-3);
  const RegularizationSchedule schedule;
  std::vector<std::array<int, 4>> monomials;
  for (int total = 0; total <= 2; ++total)
    for (int a = total; a >= 0; --a)
      for (int b = total - a; b >= 0; --b)
        for (int c = total - a - b; c >= 0; --c) monomials.push_back({a, b, c, total - a - b - c});
  for (int p = 1; p <= 3; ++p) {
    for (int q = 1; q <= 3; ++q) {
      for (const auto& e : monomials) {
        RationalPoly monomial(4);
        monomial.add_term({e[0], e[1], e[2], e[3]}, 1);
        AmbientTestFunction psi;
        psi.polynomial = monomial.cast<Complex>();
        psi.support_radius = 1.0;
        const bool hit = e[0] == p - 1 && e[1] == 0 && e[2] == q - 1 && e[3] == 0;
        const Complex oracle = hit ? kTwoPiI * kTwoPiI : Complex{};
        const CurrentValue v = ch_product_pair(p, q, psi, schedule);
        const double err = relative_error(v.value, oracle);
        tr.observe(err);
        const std::string text = format_polynomial(monomial, ambient_variables());
        tr.add(record("residue", {{"product", true}, {"p", p}, {"q", q}, {"psi", text}}, v.value, err));
      }
    }
  }
  return tr.finish("135 product pairings vs (2 pi i)^2 times the mixed Taylor coefficient");
}

// Criterion 4: exact Hefer identity.
CriterionResult hefer_identity(const Context&) {
  Tracker tr(4, 0.0);
  for (const char* text : {"z1^2 - z2^3", "z1^3 - z2^4", "z1^2 - z2^5"}) {
    const HeferData h = hefer(parse_polynomial(text, holomorphic_ambient_variables()));
    const RationalPoly defect = h.identity_defect();
    const double terms = static_cast<double>(defect.terms().size());
    tr.observe(terms);
    json params{{"a", text},
                {"g1", format_polynomial(h.g1, hefer_variables())},
                {"g2", format_polynomial(h.g2, hefer_variables())}};
    tr.add(record("hefer", params, Complex{terms, 0.0}, terms));
  }
  return tr.finish("nonzero terms in (zeta-z).g - a(zeta) + a(z)");
}

// Criterion 5: structure form of the cusps.
CriterionResult structure_forms(const Context&) {
  Tracker tr(5, 0.0);
  for (const auto& [r, s] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}}) {
    const StructureForm w = structure_form(make_cusp(r, s));
    const bool exact = w.pole_order == (r - 1) * (s - 1) && w.unit_is_constant() &&
                       w.numerator == RationalPoly::constant(1, 1) && w.denominator == RationalPoly::constant(1, 1) &&
                       w.constant_factor == Complex(0.0, -2.0 * kPi);
    tr.observe(exact ? 0.0 : 1.0);
    tr.add(record("kernel", {{"structure_form", "cusp:" + std::to_string(r) + "," + std::to_string(s)},
                             {"pole_order", w.pole_order}},
                  w.constant_factor, exact ? 0.0 : 1.0));
  }
  return tr.finish("omega = -2 pi i dt / t^((r-1)(s-1)) exactly");
}

// Criterion 6: P reproduces strongly holomorphic functions on the cusp.
CriterionResult cusp_reproduction(const Context& ctx) {
  Tracker tr(6, 1e-3);
  const CurveSpec cusp = make_cusp(2, 3);
  const auto kernel = curve_kernel_assemble(cusp, WeightSpec::for_ball(1.0), KernelRole::Projection);
  const auto targets = default_targets(10, 0.2, 0.6 * kernel.disc_radius());
  const std::vector<std::pair<int, std::string>> cases{{0, "1"}, {2, "z2"}, {3, "z1"}, {4, "z2^2"}};
  for (const auto& [k, ambient] : cases) {
    const auto phi = polynomial_form(param_poly("t^" + std::to_string(k)), 0, kernel.disc_radius());
    const RationalPoly hol = parse_polynomial(ambient, holomorphic_ambient_variables());
    const auto samples = apply_P(kernel, phi, targets, ctx.op);
    for (const Sample& s : samples) {
      const Complex exact = std::pow(s.t, k);
      const double e = relative_error(s.value, exact);
      const ContourValue contour = stout_boundary_kernel(cusp, hol, s.t);
      const double ec = relative_error(contour.value, exact);
      tr.observe(e);
      tr.observe(ec);
      tr.add(record("reproduce", {{"kernel", "cusp:2,3"}, {"phi", ambient}, {"t_re", s.t.real()}, {"t_im", s.t.imag()}},
                    s.value, e));
      tr.add(record("reproduce", {{"kernel", "cusp:2,3"}, {"boundary", true}, {"phi", ambient},
                                  {"t_re", s.t.real()}, {"t_im", s.t.imag()}},
                    contour.value, ec));
    }
  }
  return tr.finish("P phi = phi and the boundary formula for phi in {1, z2, z1, z2^2} at 10 points");
}

// Criterion 7: Koppelman identity for (0,1)-forms on the cusp.
CriterionResult cusp_koppelman(const Context& ctx) {
  Tracker tr(7, 1e-3);
  const auto kernel = curve_kernel_assemble(make_cusp(2, 3), WeightSpec::for_ball(1.0), KernelRole::Solution);
  const Parametrization& param = *kernel.parametrization();
  const auto targets = default_targets(20, 0.2, 0.6 * kernel.disc_radius());
  const std::vector<std::pair<std::string, std::string>> forms{{"1", "0"}, {"z2", "conj(z1) + z1"}};
  for (const auto& [p, q] : forms) {
    const TestForm phi = pullback_form(param, ambient_poly(p), ambient_poly(q), 0.8);
    const KoppelmanReport rep = verify_koppelman(kernel, phi, targets, ctx.op);
    tr.observe(rep.max_residual);
    for (const auto& row : rep.rows)
      tr.add(record("koppelman", {{"kernel", "cusp:2,3"}, {"form", "(" + p + ") dz1b + (" + q + ") dz2b"},
                                  {"t_re", row.t.real()}, {"t_im", row.t.imag()}},
                    row.dbar_K, row.residual));
  }
  return tr.finish("max |phi - dbar K phi| over 20 points for two pulled-back (0,1)-forms");
}

// Criterion 8: boundary condition, the solver, and residue extraction.
CriterionResult membership_and_correction(const Context& ctx) {
  Tracker tr(8, 1e-3);
  const CurveSpec cusp = make_cusp(2, 3);
  const auto kernel = curve_kernel_assemble(cusp, WeightSpec::for_ball(1.0), KernelRole::Solution);
  const StructureForm& omega = kernel.structure();
  const Parametrization& param = *kernel.parametrization();
  const auto schedule = RegularizationSchedule::for_disc(kernel.disc_radius());
  const auto exponents = semigroup_elements(cusp, omega.pole_order + 5);

  // (a) smooth pullbacks: every moment vanishes and decays.
  for (const char* f : {"conj(z1)*z2 + conj(z2)", "1 + z1*conj(z1) + conj(z2)^2*z2"}) {
    const NumericPoly u(pullback_polynomial(param, ambient_poly(f)));
    const auto samples = sample_annuli([&](Complex t) { return u(t, std::conj(t)); }, schedule, {}, ctx.op.threads);
    const MembershipVerdict v = membership_test(samples, omega, exponents);
    double decay = 0.0;
    for (const auto& m : v.moments)
      if (m.max_abs > 1e-12) decay = std::max(decay, std::abs(m.limit.trace.back().value) / m.max_abs);
    tr.require_true(v.pass);
    tr.observe(decay);
    tr.add(record("membership", {{"u", f}, {"pass", v.pass}}, Complex{decay, 0.0}, decay));
  }

  // (b) solve dbar u = dbar(psi * bump).
  const TestForm psi = pullback_function(param, ambient_poly("z1*conj(z2) + conj(z1)"), 0.8);
  SolveOptions solve;
  solve.op = ctx.op;
  const SolveReport rep = solve_dbar(kernel, psi.dbar_form(), solve);
  tr.require_true(rep.membership_after.pass && rep.pass);
  tr.observe(rep.max_dbar_residual);
  json sr = record("solve-dbar", {{"psi", "z1*conj(z2) + conj(z1)"}}, Complex{rep.max_dbar_residual, 0.0},
                   rep.max_dbar_residual);
  sr["verdict"] = rep.membership_after.pass ? "Pass" : "Fail";
  tr.add(sr);

  // (c) planted tail c/t on top of a smooth function.
  const Complex planted{0.3, -0.2};
  const NumericPoly smooth(pullback_polynomial(param, ambient_poly("conj(z2) + z1*conj(z1)")));
  const auto u1 = [&](Complex t) { return smooth(t, std::conj(t)) + planted / t; };
  const auto samples = sample_annuli(u1, schedule, {}, ctx.op.threads);
  const MembershipVerdict before = membership_test(samples, omega, exponents);
  const ResidueCoefficients coeffs = extract_residue_coeffs(samples, omega, omega.pole_order + 5);
  Complex tail{};
  for (const auto& [e, c] : correction_terms(coeffs, omega))
    if (e == -1) tail = c;
  const double tail_error = std::abs(tail - planted) / std::abs(planted);
  // Moment oracle: dbar(1/t) ^ dt pairs to 2 pi i, so c_k = constant * planted.
  const double coeff_error =
      std::abs(coeffs.c[static_cast<std::size_t>(omega.pole_order)] - omega.constant_factor * planted) /
      std::abs(omega.constant_factor * planted);
  const MembershipVerdict after = membership_test(subtract(samples, correction_function(coeffs, omega)), omega,
                                                  exponents);
  tr.require_true(!before.pass && after.pass);
  tr.observe(tail_error);
  tr.observe(coeff_error);
  json pr = record("membership", {{"u", "smooth + c/t"}, {"c", complex_text(planted)}}, tail, tail_error);
  pr["verdict"] = std::string(before.pass ? "Pass" : "Fail") + " -> " + (after.pass ? "Pass" : "Fail");
  tr.add(pr);
  return tr.finish("smooth moments decay, solve-dbar passes, planted 1/t tail recovered and removed");
}

// Criterion 9: jet obstruction.
CriterionResult obstruction(const Context&) {
  Tracker tr(9, 0.0);
  const auto uni = [](const std::string& text) { return param_poly(text).embedded({0, 0}, 1); };
  {
    const JetSystem sys = build_jet_system(uni("t^3"), uni("t^7 + t^8"), param_poly("3*(conj(t)^9 + conj(t)^10)"), 12);
    const FeasibilityResult r = feasibility(sys);
    bool annihilates = r.verdict == Feasibility::Infeasible;
    if (annihilates) {
      for (std::size_t j = 0; j < sys.column_count(); ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < sys.rows.size(); ++i) s += r.certificate[i] * sys.matrix[i][j];
        annihilates = annihilates && s == 0;
      }
      annihilates = annihilates && pair_certificate(sys, r.certificate, sys.primitive) != 0;
    }
    tr.observe(annihilates ? 0.0 : 1.0);
    json rec = record("obstruction", {{"curve", "map:t^3,t^7+t^8"}, {"mu", "3*(conj(t)^9+conj(t)^10)"}, {"order", 12}},
                      Complex{to_double(r.certificate_value), 0.0}, annihilates ? 0.0 : 1.0);
    rec["verdict"] = std::string(to_string(r.verdict));
    rec["certificate"] = format_polynomial(r.certificate_poly, parameter_variables());
    tr.add(rec);
  }
  {
    const JetSystem sys = build_jet_system(uni("t^2"), uni("t^3"), param_poly("2*conj(t)"), 4);
    const FeasibilityResult r = feasibility(sys);
    const bool ok = r.verdict == Feasibility::Feasible && r.witness == ambient_poly("conj(z1)");
    tr.observe(ok ? 0.0 : 1.0);
    json rec = record("obstruction", {{"curve", "map:t^2,t^3"}, {"mu", "2*conj(t)"}, {"order", 4}}, Complex{},
                      ok ? 0.0 : 1.0);
    rec["verdict"] = std::string(to_string(r.verdict));
    rec["witness"] = format_polynomial(r.witness, ambient_variables());
    tr.add(rec);
  }
  return tr.finish("exact certificate for (t^3, t^7+t^8); witness conj(z1) for (t^2, t^3)");
}

// Criterion 10: standard extension property.
CriterionResult sep(const Context&) {
  Tracker tr(10, 1e-4);
  const RegularizationSchedule schedule;
  const QuadratureSpec quad;
  for (int m = 1; m <= 3; ++m) {
    for (const char* text : {"1", "t", "conj(t)", "t^2", "t*conj(t)", "t^3 + conj(t)^2"}) {
      const TestForm psi(param_poly(text), 0, 1.0);
      const CurrentValue v = sep_restrict(m, psi, schedule, quad);
      const double e = std::abs(v.value);
      tr.observe(e);
      tr.add(record("residue", {{"sep", "pv"}, {"m", m}, {"psi", text}}, v.value, e));
    }
    // The residue current lives at the origin: the restriction is the whole pairing.
    const std::string hit = "t^" + std::to_string(m - 1);
    const TestForm psi(param_poly(hit + " + conj(t)"), 0, 1.0);
    const CurrentValue v = sep_restrict_residue(m, psi, schedule, quad);
    const double e = relative_error(v.value, kTwoPiI);
    tr.observe(e);
    tr.add(record("residue", {{"sep", "residue"}, {"m", m}, {"psi", hit + " + conj(t)"}}, v.value, e));
  }
  return tr.finish("1_{0} (1/t^m) = 0 and 1_{0} dbar(1/t^m) = dbar(1/t^m)");
}

using Runner = std::function<CriterionResult(const Context&)>;

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> r{
      {"Cauchy-Pompeiu baseline on the disc", smooth_disc},
      {"residue pairing vs Taylor oracle", residue_oracle_check},
      {"product residue vs tensor oracle", coleff_herrera},
      {"Hefer identity", hefer_identity},
      {"structure form of cusps", structure_forms},
      {"holomorphic reproduction on the cusp", cusp_reproduction},
      {"Koppelman identity on the cusp", cusp_koppelman},
      {"boundary condition and correction", membership_and_correction},
      {"jet obstruction certificate", obstruction},
      {"standard extension property", sep},
  };
  return r;
}

}  // namespace

int criterion_count() { return 11; }

std::string criterion_name(int id) {
  if (id == 11) return "determinism";
  require(id >= 1 && id <= 10, "criterion id must be in 1..11");
  return registry()[static_cast<std::size_t>(id - 1)].first;
}

std::vector<CriterionResult> run(const Options& options) {
  Context ctx;
  ctx.op.threads = options.threads > 0 ? options.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 10; ++id) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) continue;
    try {
      out.push_back(registry()[static_cast<std::size_t>(id - 1)].second(ctx));
    } catch (const Error& e) {
      CriterionResult r;
      r.id = id;
      r.name = criterion_name(id);
      r.pass = false;
      r.metric = std::numeric_limits<double>::infinity();
      static constexpr double kTolerance[] = {1e-6, 1e-4, 1e-3, 0.0, 0.0, 1e-3, 1e-3, 1e-3, 0.0, 1e-4};
      r.tolerance = kTolerance[id - 1];
      r.summary = std::string(to_string(e.kind())) + ": " + e.what();
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::string to_json_lines(const std::vector<CriterionResult>& results) {
  std::string out;
  for (const auto& r : results) {
    for (const auto& rec : r.records) out += rec.dump() + "\n";
    json v = record("selftest", {{"criterion", r.id}, {"name", r.name}, {"tolerance", r.tolerance}},
                    Complex{r.metric, 0.0}, r.metric);
    v["verdict"] = r.pass ? "PASS" : "FAIL";
    v["params"]["summary"] = r.summary;
    out += v.dump() + "\n";
  }
  return out;
}

CriterionResult determinism(const Options& options, std::vector<CriterionResult>* first_run) {
  auto first = run(options);
  const std::string a = to_json_lines(first);
  const std::string b = to_json_lines(run(options));
  CriterionResult r;
  r.id = 11;
  r.name = criterion_name(11);
  r.pass = a == b;
  r.metric = r.pass ? 0.0 : 1.0;
  r.tolerance = 0.0;
  std::size_t pos = 0;
  while (pos < std::min(a.size(), b.size()) && a[pos] == b[pos]) ++pos;
  r.summary = r.pass ? std::to_string(a.size()) + " bytes identical across two runs"
                     : "outputs differ at byte " + std::to_string(pos);
  if (first_run) *first_run = std::move(first);
  return r;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os.precision(3);
  os << "criterion " << r.id << " " << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": " << r.metric
     << " <= " << r.tolerance << " (" << r.summary << ")";
  return os.str();
}

}  // namespace skop::selftest
