#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <thread>

#include "config.hpp"
#include "emit.hpp"
#include "skop/obstruction.hpp"
#include "skop/operators.hpp"
#include "skop/residue.hpp"
#include "skop_selftest/selftest.hpp"

namespace {

using namespace skop;
using namespace skop::cli;

constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitAcceptance = 3;

Complex parse_point(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::logic_error&) {
    fail(ErrorKind::InvalidInput, "point must be given as re,im: '" + text + "'");
  }
}

RationalPoly param_poly(const std::string& text) { return parse_polynomial(text, parameter_variables()); }
RationalPoly ambient_poly(const std::string& text) { return parse_polynomial(text, ambient_variables()); }

OperatorOptions operator_options(const RunConfig& config) {
  OperatorOptions op;
  op.quad = config.quad;
  op.threads = config.threads > 0 ? config.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return op;
}

json point_params(json params, Complex t) {
  params["t_re"] = t.real();
  params["t_im"] = t.imag();
  return params;
}

// --- residue -----------------------------------------------------------------

struct ResidueArgs {
  std::string kind = "residue";
  int m = 1;
  int p = 1;
  int q = 1;
  std::string psi = "1";
  double support = 1.0;
};

void run_residue(const ResidueArgs& a, const RunConfig& config, Emitter& out) {
  RegularizationSchedule schedule = config.schedule;
  if (schedule.delta_max <= 0.0) schedule.delta_max = RegularizationSchedule{}.delta_max;
  json params{{"kind", a.kind}, {"psi", a.psi}, {"support", a.support}};
  CurrentValue v;
  Complex oracle{};
  if (a.kind == "product") {
    AmbientTestFunction psi;
    psi.polynomial = ambient_poly(a.psi).cast<Complex>();
    psi.support_radius = a.support;
    v = ch_product_pair(a.p, a.q, psi, schedule);
    oracle = ch_oracle(a.p, a.q, psi);
    params["p"] = a.p;
    params["q"] = a.q;
  } else {
    const TestForm psi(param_poly(a.psi), 0, a.support);
    params["m"] = a.m;
    if (a.kind == "residue") {
      v = residue_pair(a.m, psi, schedule, config.quad);
      oracle = residue_oracle(a.m, psi);
    } else if (a.kind == "pv") {
      v = pv_pair(a.m, psi, schedule, config.quad);
      oracle = pv_direct(a.m, psi, config.quad).value;
    } else if (a.kind == "sep") {
      v = sep_restrict(a.m, psi, schedule, config.quad);
    } else if (a.kind == "sep-residue") {
      v = sep_restrict_residue(a.m, psi, schedule, config.quad);
      oracle = residue_oracle(a.m, psi);
    } else {
      fail(ErrorKind::InvalidInput, "residue --kind must be residue, pv, sep, sep-residue or product");
    }
  }
  params["oracle_re"] = oracle.real();
  params["oracle_im"] = oracle.imag();
  json r = make_record("residue", params, v.value, v.error_estimate);
  attach_trace(r, v.trace);
  out.emit(r);
  PlotTable plot(config.plot_path, {"delta", "value_re", "value_im"});
  for (const auto& p : v.trace) plot.row({p.delta, p.value.real(), p.value.imag()});
}

// --- kernel ------------------------------------------------------------------

struct KernelArgs {
  std::string tau = "0.3,0.1";
  std::string t = "0.2,-0.05";
  std::string role = "solution";
  bool general = false;
  bool structure = false;
};

void run_kernel(const KernelArgs& a, const RunConfig& config, Emitter& out) {
  require(a.role == "solution" || a.role == "projection", "--role must be solution or projection");
  const KernelRole role = a.role == "solution" ? KernelRole::Solution : KernelRole::Projection;
  Geometry g = make_geometry(config, role);
  if (a.general) {
    require(g.curve.has_value(), "--general needs a curve");
    g.kernel = curve_kernel_assemble(*g.curve, WeightSpec::for_ball(config.ball_radius), role,
                                     KernelVariant::GeneralCodimOne);
  }
  if (a.structure) {
    require(g.curve.has_value(), "--structure needs a curve");
    const StructureForm& w = g.kernel.structure();
    json params{{"curve", config.curve},
                {"pole_order", w.pole_order},
                {"unit_numerator", format_polynomial(w.numerator, parameter_variables())},
                {"unit_denominator", format_polynomial(w.denominator, parameter_variables())}};
    if (const auto& h = g.kernel.hefer_data()) {
      params["hefer_g1"] = format_polynomial(h->g1, hefer_variables());
      params["hefer_g2"] = format_polynomial(h->g2, hefer_variables());
      params["hefer_defect_terms"] = h->identity_defect().terms().size();
    }
    out.emit(make_record("kernel", params, w.constant_factor, 0.0));
    return;
  }
  const Complex tau = parse_point(a.tau);
  const Complex t = parse_point(a.t);
  const KernelSample s = g.kernel.sample(tau, t);
  json params{{"curve", config.curve},
              {"variant", std::string(to_string(g.kernel.variant()))},
              {"role", a.role},
              {"tau_re", tau.real()},
              {"tau_im", tau.imag()},
              {"branch", s.branch}};
  params = point_params(params, t);
  out.emit(make_record("kernel", params, s.value, 0.0));
}

// --- koppelman ---------------------------------------------------------------

struct FormArgs {
  std::string phi;       // polynomial in (t, conj t)
  int degree = -1;       // with --phi
  std::string function;  // ambient (0,0)
  std::string dz1b;      // ambient (0,1)
  std::string dz2b;
  double support = 0.0;  // 0: 0.8 * disc
};

TestForm build_form(const FormArgs& a, const Geometry& g, bool default_to_one_form) {
  const double support = a.support > 0.0 ? a.support : (g.curve ? 0.8 : 0.9) * g.disc_radius;
  if (!a.phi.empty()) {
    require(a.degree == 0 || a.degree == 1, "--phi needs --degree 0 or 1");
    return TestForm(param_poly(a.phi), a.degree, support,
                    g.curve ? SmoothnessClass::IntrinsicSmooth : SmoothnessClass::AmbientPullback);
  }
  require(g.curve.has_value() || (a.function.empty() && a.dz1b.empty() && a.dz2b.empty()),
          "ambient forms need a curve; use --phi on the disc");
  if (!g.curve) return TestForm(param_poly("conj(t)"), 0, support);
  const Parametrization& param = *g.kernel.parametrization();
  if (!a.function.empty()) return pullback_function(param, ambient_poly(a.function), support);
  if (a.dz1b.empty() && a.dz2b.empty() && !default_to_one_form)
    return pullback_function(param, ambient_poly("conj(z1)"), support);
  return pullback_form(param, ambient_poly(a.dz1b.empty() ? (a.dz2b.empty() ? "1" : "0") : a.dz1b),
                       ambient_poly(a.dz2b.empty() ? "0" : a.dz2b), support);
}

struct KoppelmanArgs {
  FormArgs form;
  bool verify = false;
  int targets = 20;
};

void run_koppelman(const KoppelmanArgs& a, const RunConfig& config, Emitter& out) {
  require(a.targets >= 1, "--targets must be positive");
  const Geometry g = make_geometry(config, KernelRole::Solution);
  const TestForm phi = build_form(a.form, g, true);
  const auto targets = default_targets(a.targets, 0.2, 0.6 * g.disc_radius);
  const OperatorOptions op = operator_options(config);
  json base{{"curve", config.curve}, {"degree", phi.degree()}};
  if (!a.verify) {
    for (const Sample& s : apply_K(g.kernel, phi.sampled(), targets, op))
      out.emit(make_record("koppelman", point_params(base, s.t), s.value, s.error));
    return;
  }
  const KoppelmanReport rep = verify_koppelman(g.kernel, phi, targets, op);
  PlotTable plot(config.plot_path, {"abs_t", "residual"});
  for (const auto& row : rep.rows) {
    json params = point_params(base, row.t);
    params["fd_noisy"] = row.fd_noisy;
    params["quad_error"] = row.quad_error;
    out.emit(make_record("koppelman", params, phi.degree() == 1 ? row.dbar_K : row.K_dbar + row.P, row.residual));
    plot.row({std::abs(row.t), row.residual});
  }
  json summary = make_record("koppelman", base, Complex{rep.max_residual, 0.0}, rep.max_residual);
  summary["params"]["fd_step"] = rep.fd_step;
  summary["verdict"] = rep.max_residual <= 1e-3 ? "Pass" : "Fail";
  out.emit(summary);
}

// --- reproduce ---------------------------------------------------------------

struct ReproduceArgs {
  std::string phi = "1";  // polynomial in t, no bump
  std::string ambient;    // optional holomorphic ambient polynomial for the boundary formula
  int targets = 10;
};

void run_reproduce(const ReproduceArgs& a, const RunConfig& config, Emitter& out) {
  const Geometry g = make_geometry(config, KernelRole::Projection);
  const RationalPoly phi_poly = param_poly(a.phi);
  const NumericPoly phi_num(phi_poly);
  const auto phi = polynomial_form(phi_poly, 0, g.disc_radius);
  const auto targets = default_targets(a.targets, 0.2, 0.6 * g.disc_radius);
  const OperatorOptions op = operator_options(config);
  std::optional<RationalPoly> hol;
  if (!a.ambient.empty()) {
    require(g.curve.has_value(), "--ambient needs a curve");
    hol = parse_polynomial(a.ambient, holomorphic_ambient_variables());
  }
  double worst = 0.0;
  for (const Sample& s : apply_P(g.kernel, phi, targets, op)) {
    const Complex exact = phi_num(s.t, std::conj(s.t));
    const double defect = std::abs(s.value - exact);
    worst = std::max(worst, defect / std::max(std::abs(exact), 1.0));
    json params = point_params({{"curve", config.curve}, {"phi", a.phi}, {"defect", defect}}, s.t);
    out.emit(make_record("reproduce", params, s.value, s.error));
    if (hol) {
      const ContourValue c = stout_boundary_kernel(*g.curve, *hol, s.t);
      json bp = point_params({{"curve", config.curve}, {"boundary", a.ambient}}, s.t);
      out.emit(make_record("reproduce", bp, c.value, c.error_estimate));
    }
  }
  json summary = make_record("reproduce", {{"curve", config.curve}, {"phi", a.phi}}, Complex{worst, 0.0}, worst);
  summary["verdict"] = worst <= 1e-3 ? "reproduced" : "defect";
  out.emit(summary);
}

// --- solve-dbar ----------------------------------------------------------------

struct SolveArgs {
  FormArgs form;
  std::string psi;  // mu = dbar(psi * bump), psi ambient
  std::string mu;   // mu = mu(t) * bump dtau-bar
  int j_max = -1;
  int samples = 12;
};

void emit_membership(const std::string& label, const MembershipVerdict& v, const RunConfig& config, Emitter& out,
                     PlotTable& plot) {
  for (const auto& m : v.moments) {
    json r = make_record("membership", {{"stage", label}, {"exponent", m.exponent}, {"max_abs", m.max_abs}},
                         m.limit.value, m.limit.error_estimate);
    attach_trace(r, m.limit.trace);
    if (m.diverging) r["params"]["note"] = m.note;
    out.emit(r);
    for (const auto& p : m.limit.trace) plot.row({static_cast<double>(m.exponent), p.delta, p.value.real(), p.value.imag()});
  }
  json s = make_record("membership", {{"stage", label}, {"curve", config.curve}, {"detail", v.detail}},
                       Complex{v.decay_ratio, 0.0}, v.decay_ratio);
  s["verdict"] = v.pass ? "Pass" : "Fail";
  out.emit(s);
}

bool run_solve(const SolveArgs& a, const RunConfig& config, Emitter& out) {
  const Geometry g = make_geometry(config, KernelRole::Solution);
  const double support = a.form.support > 0.0 ? a.form.support : 0.8 * g.disc_radius;
  SampledForm mu;
  std::string label;
  if (!a.mu.empty()) {
    mu = TestForm(param_poly(a.mu), 1, support).sampled();
    label = "(" + a.mu + ") bump dtb";
  } else {
    require(g.curve.has_value(), "--psi needs a curve; use --mu on the disc");
    const std::string psi = a.psi.empty() ? "z1*conj(z2) + conj(z1)" : a.psi;
    mu = pullback_function(*g.kernel.parametrization(), ambient_poly(psi), support).dbar_form();
    label = "dbar((" + psi + ") bump)";
  }
  SolveOptions opt;
  opt.op = operator_options(config);
  opt.schedule = effective_schedule(config, g.disc_radius);
  opt.j_max = a.j_max;
  opt.sample_count = a.samples;
  const SolveReport rep = solve_dbar(g.kernel, mu, opt);

  for (const Sample& s : rep.raw_solution)
    out.emit(make_record("solve-dbar", point_params({{"stage", "raw"}, {"mu", label}}, s.t), s.value, s.error));
  for (std::size_t j = 0; j < rep.coefficients.c.size(); ++j)
    out.emit(make_record("solve-dbar",
                         {{"stage", "coefficient"}, {"j", j}, {"masked", static_cast<bool>(rep.coefficients.masked[j])}},
                         rep.coefficients.c[j], rep.coefficients.error[j]));
  for (const auto& [e, c] : rep.correction)
    out.emit(make_record("solve-dbar", {{"stage", "correction"}, {"exponent", e}}, c, 0.0));
  PlotTable plot(config.plot_path, {"exponent", "delta", "value_re", "value_im"});
  emit_membership("before", rep.membership_before, config, out, plot);
  emit_membership("after", rep.membership_after, config, out, plot);
  for (const auto& [t, r] : rep.dbar_residuals)
    out.emit(make_record("solve-dbar", point_params({{"stage", "dbar_residual"}}, t), Complex{r, 0.0}, r));
  json summary = make_record("solve-dbar", {{"curve", config.curve}, {"mu", label}},
                             Complex{rep.max_dbar_residual, 0.0}, rep.max_dbar_residual);
  summary["params"]["order_warning"] = rep.coefficients.order_warning;
  summary["verdict"] = rep.pass ? "Pass" : "Fail";
  out.emit(summary);
  return rep.pass;
}

// --- membership --------------------------------------------------------------

struct MembershipArgs {
  std::string u = "conj(t)^3 + t^2";
  int j_max = -1;
  bool extract = false;
};

void run_membership(const MembershipArgs& a, const RunConfig& config, Emitter& out) {
  const Geometry g = make_geometry(config, KernelRole::Solution);
  require(g.curve.has_value(), "membership needs a curve");
  const StructureForm& omega = g.kernel.structure();
  const int j_max = a.j_max >= 0 ? a.j_max : omega.pole_order + 5;
  const NumericPoly u(param_poly(a.u));
  const auto samples = sample_annuli([&](Complex t) { return u(t, std::conj(t)); },
                                     effective_schedule(config, g.disc_radius), {}, operator_options(config).threads);
  PlotTable plot(config.plot_path, {"exponent", "delta", "value_re", "value_im"});
  const MembershipVerdict v = membership_test(samples, omega, semigroup_elements(*g.curve, j_max));
  emit_membership("test", v, config, out, plot);
  if (!a.extract) return;
  const ResidueCoefficients c = extract_residue_coeffs(samples, omega, j_max);
  for (std::size_t j = 0; j < c.c.size(); ++j)
    out.emit(make_record("membership", {{"stage", "coefficient"}, {"j", j}, {"masked", static_cast<bool>(c.masked[j])}},
                         c.c[j], c.error[j]));
  for (const auto& [e, coeff] : correction_terms(c, omega))
    out.emit(make_record("membership", {{"stage", "correction"}, {"exponent", e}}, coeff, 0.0));
  const MembershipVerdict after = membership_test(subtract(samples, correction_function(c, omega)), omega,
                                                  semigroup_elements(*g.curve, j_max));
  emit_membership("corrected", after, config, out, plot);
}

// --- obstruction ---------------------------------------------------------------

struct ObstructionArgs {
  std::string mu = "3*(conj(t)^9 + conj(t)^10)";
  int order = 12;
  int parameter_order = -1;
  int monotone_to = -1;
};

void run_obstruction(const ObstructionArgs& a, const RunConfig& config, Emitter& out) {
  require(config.curve.rfind("disc", 0) != 0, "obstruction needs a curve");
  const Parametrization param = normalize(parse_curve(config.curve, config.ball_radius));
  const RationalPoly mu = param_poly(a.mu);
  const JetSystem sys = build_jet_system(param.gamma1, param.gamma2, mu, a.order,
                                         a.parameter_order >= 0 ? std::optional<int>(a.parameter_order) : std::nullopt);
  const FeasibilityResult r = feasibility(sys);
  json params{{"curve", config.curve},
              {"mu", a.mu},
              {"order", a.order},
              {"parameter_order", sys.parameter_order},
              {"columns", sys.column_count()},
              {"rows", sys.rows.size()},
              {"rank", r.rank},
              {"primitive", format_polynomial(sys.primitive, parameter_variables())},
              {"detail", r.detail}};
  json rec = make_record("obstruction", params, Complex{to_double(r.certificate_value), 0.0}, 0.0);
  rec["verdict"] = std::string(to_string(r.verdict));
  if (r.verdict == Feasibility::Infeasible) {
    rec["certificate"] = format_polynomial(r.certificate_poly, parameter_variables());
    rec["certificate_value"] = format_rational(r.certificate_value);
  } else {
    rec["witness"] = format_polynomial(r.witness, ambient_variables());
    rec["holomorphic_part"] = format_polynomial(r.holomorphic_part, parameter_variables());
  }
  out.emit(rec);
  if (a.monotone_to >= a.order) {
    const MonotonicityReport m = check_monotonicity(param.gamma1, param.gamma2, mu, a.order, a.monotone_to);
    json verdicts = json::array();
    for (const auto& [d, v] : m.verdicts) verdicts.push_back({{"order", d}, {"verdict", std::string(to_string(v))}});
    json mr = make_record("obstruction", {{"monotonicity", verdicts}}, Complex{}, 0.0);
    mr["verdict"] = m.monotone ? "monotone" : "violated";
    out.emit(mr);
  }
}

// --- selftest ------------------------------------------------------------------

struct SelftestArgs {
  std::vector<int> only;
  bool repeat = true;
};

bool run_selftest(const SelftestArgs& a, const RunConfig& config, Emitter& out) {
  selftest::Options opt;
  opt.threads = config.threads;
  opt.only = a.only;
  for (int id : a.only) require(id >= 1 && id <= 10, "--only takes criteria 1..10");
  std::vector<selftest::CriterionResult> results;
  std::optional<selftest::CriterionResult> det;
  if (a.repeat) {
    det = selftest::determinism(opt, &results);
  } else {
    results = selftest::run(opt);
  }
  std::istringstream lines(selftest::to_json_lines(results));
  for (std::string line; std::getline(lines, line);) out.emit(json::parse(line));
  bool ok = true;
  for (const auto& r : results) {
    std::cerr << selftest::format_line(r) << '\n';
    ok = ok && r.pass;
  }
  if (det) {
    std::cerr << selftest::format_line(*det) << '\n';
    ok = ok && det->pass;
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral operators and dbar solutions on singular plane curves"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string config_path;
  std::optional<std::string> curve, output, format, plot;
  std::optional<double> ball_radius, delta_max, ratio, tol;
  std::optional<int> count, extrapolation_order, radial, angular, threads;
  app.add_option("--config", config_path, "INI config file")->check(CLI::ExistingFile);
  app.add_option("--curve", curve, "cusp:r,s | map:g1,g2 | implicit:a | disc[:R]");
  app.add_option("--ball-radius", ball_radius, "radius of the ambient ball");
  app.add_option("--delta-max", delta_max, "largest regularization scale");
  app.add_option("--ratio", ratio, "geometric ratio of the delta schedule");
  app.add_option("--count", count, "number of delta levels");
  app.add_option("--extrapolation-order", extrapolation_order, "Richardson order");
  app.add_option("--radial-points", radial, "radial nodes per panel");
  app.add_option("--angular-points", angular, "initial angular nodes per ring");
  app.add_option("--tol", tol, "adaptive quadrature tolerance");
  app.add_option("--threads", threads, "worker threads (default: all cores)");
  app.add_option("--output", output, "output file (default stdout)");
  app.add_option("--format", format, "json or csv");
  app.add_option("--plot", plot, "CSV file for plot data");

  ResidueArgs residue;
  auto* sub_residue = app.add_subcommand("residue", "Residue and principal value pairings");
  sub_residue->add_option("--kind", residue.kind, "residue | pv | sep | sep-residue | product");
  sub_residue->add_option("--m", residue.m, "order of 1/t^m");
  sub_residue->add_option("--p", residue.p, "order in z1 (product)");
  sub_residue->add_option("--q", residue.q, "order in z2 (product)");
  sub_residue->add_option("--psi", residue.psi, "test polynomial (t, conj(t); ambient for product)");
  sub_residue->add_option("--support", residue.support, "bump support radius");

  KernelArgs kernel;
  auto* sub_kernel = app.add_subcommand("kernel", "Evaluate the integral kernel or the structure form");
  sub_kernel->add_option("--tau", kernel.tau, "integration point re,im");
  sub_kernel->add_option("--t", kernel.t, "target point re,im");
  sub_kernel->add_option("--role", kernel.role, "solution | projection");
  sub_kernel->add_flag("--general", kernel.general, "use the divided-difference assembly");
  sub_kernel->add_flag("--structure", kernel.structure, "print the structure form and Hefer data");

  auto add_form_options = [](CLI::App* sub, FormArgs& f) {
    sub->add_option("--phi", f.phi, "form coefficient in (t, conj(t)), times the bump");
    sub->add_option("--degree", f.degree, "form degree for --phi (0 or 1)");
    sub->add_option("--function", f.function, "ambient function to pull back");
    sub->add_option("--dz1b", f.dz1b, "coefficient of conj(dz1) (ambient)");
    sub->add_option("--dz2b", f.dz2b, "coefficient of conj(dz2) (ambient)");
    sub->add_option("--support", f.support, "bump support radius in the parameter");
  };

  KoppelmanArgs kop;
  auto* sub_kop = app.add_subcommand("koppelman", "Apply K and verify the Koppelman identity");
  add_form_options(sub_kop, kop.form);
  sub_kop->add_flag("--verify", kop.verify, "report identity residuals");
  sub_kop->add_option("--targets", kop.targets, "number of target points");

  ReproduceArgs rep;
  auto* sub_rep = app.add_subcommand("reproduce", "Apply P to a holomorphic function");
  sub_rep->add_option("--phi", rep.phi, "polynomial in t");
  sub_rep->add_option("--ambient", rep.ambient, "same function as a polynomial in z1, z2 (boundary formula)");
  sub_rep->add_option("--targets", rep.targets, "number of target points");

  SolveArgs solve;
  auto* sub_solve = app.add_subcommand("solve-dbar", "Solve dbar u = mu on the curve");
  sub_solve->add_option("--psi", solve.psi, "mu = dbar(psi * bump), psi ambient");
  sub_solve->add_option("--mu", solve.mu, "mu = mu(t) * bump dtau-bar");
  sub_solve->add_option("--support", solve.form.support, "bump support radius");
  sub_solve->add_option("--j-max", solve.j_max, "highest moment exponent");
  sub_solve->add_option("--samples", solve.samples, "number of residual sample points");

  MembershipArgs mem;
  auto* sub_mem = app.add_subcommand("membership", "Boundary condition test for a function on the curve");
  sub_mem->add_option("--u", mem.u, "function of (t, conj(t)); negative powers of t allowed");
  sub_mem->add_option("--j-max", mem.j_max, "highest test exponent");
  sub_mem->add_flag("--extract", mem.extract, "also extract residue coefficients and correct");

  ObstructionArgs obs;
  auto* sub_obs = app.add_subcommand("obstruction", "Exact jet test for smooth solvability");
  sub_obs->add_option("--mu", obs.mu, "coefficient of dtau-bar");
  sub_obs->add_option("--order", obs.order, "ambient jet order D");
  sub_obs->add_option("--parameter-order", obs.parameter_order, "parameter truncation (default automatic)");
  sub_obs->add_option("--monotone-to", obs.monotone_to, "recheck up to this ambient order");

  SelftestArgs st;
  bool no_repeat = false;
  auto* sub_self = app.add_subcommand("selftest", "Run the acceptance suite");
  sub_self->add_option("--only", st.only, "criteria to run")->delimiter(',');
  sub_self->add_flag("--no-repeat", no_repeat, "skip the determinism rerun");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (!config_path.empty()) load_config(config_path, config);
    if (curve) config.curve = *curve;
    if (ball_radius) config.ball_radius = *ball_radius;
    if (delta_max) config.schedule.delta_max = *delta_max;
    if (ratio) config.schedule.ratio = *ratio;
    if (count) config.schedule.count = *count;
    if (extrapolation_order) config.schedule.extrapolation_order = *extrapolation_order;
    if (radial) config.quad.radial_points = *radial;
    if (angular) config.quad.angular_points = *angular;
    if (tol) config.quad.adaptive_tolerance = *tol;
    if (threads) config.threads = *threads;
    if (output) config.output_path = *output;
    if (format) config.format = *format;
    if (plot) config.plot_path = *plot;
    config.validate();
    // Parse the curve up front so malformed input fails before any work.
    if (config.curve.rfind("disc", 0) != 0) (void)parse_curve(config.curve, config.ball_radius);

    Emitter out(config.output_path, config.format);
    bool ok = true;
    if (sub_residue->parsed()) run_residue(residue, config, out);
    if (sub_kernel->parsed()) run_kernel(kernel, config, out);
    if (sub_kop->parsed()) run_koppelman(kop, config, out);
    if (sub_rep->parsed()) run_reproduce(rep, config, out);
    if (sub_solve->parsed()) ok = run_solve(solve, config, out);
    if (sub_mem->parsed()) run_membership(mem, config, out);
    if (sub_obs->parsed()) run_obstruction(obs, config, out);
    if (sub_self->parsed()) {
      st.repeat = !no_repeat;
      ok = run_selftest(st, config, out);
    }
    out.flush();
    if (!ok) return kExitAcceptance;
    return 0;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::InvalidInput:
      case ErrorKind::Unsupported:
        return kExitValidation;
      default:
        return kExitNumerical;
    }
  }
}
