#include "skop/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace skop {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kTwoPiI{0.0, 2.0 * kPi};

RationalPoly t_power(int n) { return RationalPoly::variable(1, 0, n); }

int valuation(const RationalPoly& p) {
  require(!p.is_zero(), "valuation of the zero polynomial");
  return p.valuation_in(0);
}

RationalPoly shift_down(const RationalPoly& p, int v) {
  RationalPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) out.add_term({e[0] - v}, c);
  return out;
}

bool is_monomial(const RationalPoly& p) { return p.terms().size() == 1; }

std::vector<Complex> dense_coefficients(const RationalPoly& p) {
  std::vector<Complex> c(static_cast<std::size_t>(p.degree_in(0)) + 1, Complex{});
  for (const auto& [e, q] : p.terms()) c[static_cast<std::size_t>(e[0])] += to_complex(q);
  return c;
}

// Durand-Kerner iteration for all roots of sum c[k] x^k.
std::vector<Complex> polynomial_roots(std::vector<Complex> c) {
  while (!c.empty() && c.back() == Complex{}) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  const Complex lead = c.back();
  for (auto& x : c) x /= lead;
  double bound = 0.0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[static_cast<std::size_t>(k)]));
  bound = 1.0 + bound;
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::polar(0.5 * bound, 2.0 * kPi * k / n + 0.4);
  auto eval = [&](Complex x) {
    Complex v = c.back();
    for (int k = n - 1; k >= 0; --k) v = v * x + c[static_cast<std::size_t>(k)];
    return v;
  };
  for (int iter = 0; iter < 500; ++iter) {
    double change = 0.0;
    for (int i = 0; i < n; ++i) {
      Complex denom(1.0);
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
      if (denom == Complex{}) denom = Complex(1e-14);
      const Complex step = eval(z[static_cast<std::size_t>(i)]) / denom;
      z[static_cast<std::size_t>(i)] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15 * bound) break;
  }
  return z;
}

bool vanishes_on_map(const RationalPoly& a, const RationalPoly& g1, const RationalPoly& g2) {
  return a.substitute({g1, g2}).is_zero();
}

}  // namespace

std::string_view to_string(CurveKind kind) noexcept {
  switch (kind) {
    case CurveKind::MonomialCusp: return "cusp";
    case CurveKind::ParametrizedMap: return "map";
    case CurveKind::Implicit: return "implicit";
  }
  return "unknown";
}

RationalPoly CurveSpec::defining_polynomial() const {
  switch (kind) {
    case CurveKind::MonomialCusp: {
      const std::size_t n = 2;
      return RationalPoly::variable(n, 0, r) - RationalPoly::variable(n, 1, s);
    }
    case CurveKind::Implicit:
    case CurveKind::ParametrizedMap:
      if (defining) return *defining;
      fail(ErrorKind::InvalidInput, "curve has no defining equation; supply one or use a monomial first coordinate");
  }
  fail(ErrorKind::InvalidInput, "unknown curve kind");
}

std::string CurveSpec::descriptor() const {
  std::ostringstream os;
  switch (kind) {
    case CurveKind::MonomialCusp: os << "cusp:" << r << ',' << s; break;
    case CurveKind::ParametrizedMap: {
      const VariableSet& v = parameter_variables();
      os << "map:" << format_polynomial(gamma1.embedded({0}, 2), v) << ','
         << format_polynomial(gamma2.embedded({0}, 2), v);
      break;
    }
    case CurveKind::Implicit:
      os << "implicit:" << format_polynomial(*defining, holomorphic_ambient_variables());
      break;
  }
  return os.str();
}

CurveSpec make_cusp(int r, int s, double ball_radius) {
  require(ball_radius > 0.0, "ball_radius must be positive");
  require(r >= 1 && s > r, "cusp requires 1 <= r < s");
  require(std::gcd(r, s) == 1, "cusp requires gcd(r, s) = 1 (otherwise z1^r - z2^s is reducible), got gcd " +
                                   std::to_string(std::gcd(r, s)));
  CurveSpec spec;
  spec.kind = CurveKind::MonomialCusp;
  spec.r = r;
  spec.s = s;
  spec.gamma1 = t_power(s);
  spec.gamma2 = t_power(r);
  spec.ball_radius = ball_radius;
  spec.smooth = (r == 1);
  return spec;
}

RationalPoly holomorphic_in_parameter(const RationalPoly& p) {
  if (p.nvars() == 1) return p;
  require(p.nvars() == 2, "expected a polynomial in t");
  RationalPoly out(1);
  for (const auto& [e, c] : p.terms()) {
    require(e[1] == 0, "parametrization must be holomorphic (no conj(t))");
    require(e[0] >= 0, "parametrization must be a polynomial");
    out.add_term({e[0]}, c);
  }
  return out;
}

std::optional<RationalPoly> eliminate_monomial_map(const RationalPoly& gamma1, const RationalPoly& gamma2) {
  if (!is_monomial(gamma1)) return std::nullopt;
  const auto& [e1, c1] = *gamma1.terms().begin();
  const int n = e1[0];
  if (n < 1) return std::nullopt;

  // p_k(z1) = sum over n-th roots of unity of gamma2(omega t)^k, written in z1 = c1 t^n.
  std::vector<RationalPoly> p(static_cast<std::size_t>(n) + 1, RationalPoly(2));
  RationalPoly power = RationalPoly::constant(1, Rational(1));
  for (int k = 1; k <= n; ++k) {
    power = power * gamma2;
    RationalPoly pk(2);
    for (const auto& [e, c] : power.terms()) {
      if (e[0] % n != 0) continue;
      const int m = e[0] / n;
      Rational scale(1);
      for (int i = 0; i < m; ++i) scale /= c1;
      pk.add_term({m, 0}, Rational(n) * c * scale);
    }
    p[static_cast<std::size_t>(k)] = pk;
  }
  // Newton identities for the elementary symmetric functions.
  std::vector<RationalPoly> el(static_cast<std::size_t>(n) + 1, RationalPoly(2));
  el[0] = RationalPoly::constant(2, Rational(1));
  for (int k = 1; k <= n; ++k) {
    RationalPoly acc(2);
    for (int i = 1; i <= k; ++i) {
      RationalPoly term = el[static_cast<std::size_t>(k - i)] * p[static_cast<std::size_t>(i)];
      if (i % 2 == 0) term = -term;
      acc += term;
    }
    el[static_cast<std::size_t>(k)] = acc * Rational(Rational(1) / k);
  }
  RationalPoly a(2);
  for (int k = 0; k <= n; ++k) {
    RationalPoly term = el[static_cast<std::size_t>(k)] * RationalPoly::variable(2, 1, n - k);
    if (k % 2 == 1) term = -term;
    a += term;
  }
  return a;
}

CurveSpec make_parametrized(const RationalPoly& gamma1, const RationalPoly& gamma2, double ball_radius,
                            std::optional<RationalPoly> defining) {
  require(ball_radius > 0.0, "ball_radius must be positive");
  const RationalPoly g1 = holomorphic_in_parameter(gamma1);
  const RationalPoly g2 = holomorphic_in_parameter(gamma2);
  require(!g1.is_zero() || !g2.is_zero(), "parametrization must be non-constant");
  require(g1.coefficient({0}) == 0 && g2.coefficient({0}) == 0, "parametrization must vanish at t = 0");
  CurveSpec spec;
  spec.kind = CurveKind::ParametrizedMap;
  spec.gamma1 = g1;
  spec.gamma2 = g2;
  spec.ball_radius = ball_radius;
  if (defining) {
    require(defining->nvars() == 2, "defining polynomial must be in (z1, z2)");
    require(vanishes_on_map(*defining, g1, g2), "defining polynomial does not vanish on the parametrization");
    spec.defining = defining;
  } else if (auto a = eliminate_monomial_map(g1, g2)) {
    spec.defining = a;
  }
  const int v1 = g1.is_zero() ? std::numeric_limits<int>::max() : valuation(g1);
  const int v2 = g2.is_zero() ? std::numeric_limits<int>::max() : valuation(g2);
  spec.smooth = std::min(v1, v2) == 1;
  spec.s = g1.is_zero() ? 0 : v1;
  spec.r = g2.is_zero() ? 0 : v2;
  check_injective(make_parametrization(g1, g2, ball_radius));
  return spec;
}

CurveSpec make_implicit(const RationalPoly& a, double ball_radius) {
  require(ball_radius > 0.0, "ball_radius must be positive");
  require(a.nvars() == 2, "implicit curve needs a polynomial in (z1, z2)");
  int r = 0, s = 0;
  Rational c1 = 0, c2 = 0;
  bool ok = a.terms().size() == 2;
  if (ok) {
    for (const auto& [e, c] : a.terms()) {
      if (e[0] > 0 && e[1] == 0) {
        r = e[0];
        c1 = c;
      } else if (e[1] > 0 && e[0] == 0) {
        s = e[1];
        c2 = c;
      }
    }
    ok = r > 0 && s > 0 && c1 == -c2;
  }
  if (!ok)
    fail(ErrorKind::Unsupported, "implicit curves are supported only in the form c*(z1^r - z2^s)");
  require(std::gcd(r, s) == 1, "implicit curve z1^r - z2^s requires gcd(r, s) = 1");
  require(r != s, "implicit curve requires r != s");
  CurveSpec spec;
  spec.kind = CurveKind::Implicit;
  spec.r = r;
  spec.s = s;
  spec.gamma1 = t_power(s);
  spec.gamma2 = t_power(r);
  spec.defining = a;
  spec.ball_radius = ball_radius;
  spec.smooth = std::min(r, s) == 1;
  return spec;
}

CurveSpec parse_curve(std::string_view descriptor, double ball_radius) {
  const auto colon = descriptor.find(':');
  require(colon != std::string_view::npos, "curve descriptor must look like kind:data");
  const std::string kind(descriptor.substr(0, colon));
  const std::string body(descriptor.substr(colon + 1));
  if (kind == "cusp") {
    const auto comma = body.find(',');
    require(comma != std::string::npos, "cusp descriptor must be cusp:r,s");
    int r = 0, s = 0;
    try {
      std::size_t used = 0;
      r = std::stoi(body.substr(0, comma), &used);
      require(used == comma, "bad cusp exponent");
      const std::string rest = body.substr(comma + 1);
      s = std::stoi(rest, &used);
      require(used == rest.size(), "bad cusp exponent");
    } catch (const std::logic_error&) {
      fail(ErrorKind::InvalidInput, "cusp descriptor must be cusp:r,s with integers r, s");
    }
    return make_cusp(r, s, ball_radius);
  }
  if (kind == "map") {
    const auto comma = body.find(',');
    require(comma != std::string::npos, "map descriptor must be map:gamma1,gamma2");
    const auto g1 = parse_polynomial(body.substr(0, comma), parameter_variables());
    const auto g2 = parse_polynomial(body.substr(comma + 1), parameter_variables());
    return make_parametrized(g1, g2, ball_radius);
  }
  if (kind == "implicit") return make_implicit(parse_polynomial(body, holomorphic_ambient_variables()), ball_radius);
  fail(ErrorKind::InvalidInput, "unknown curve kind '" + kind + "' (expected cusp, map or implicit)");
}

double Parametrization::max_norm_on_circle(double rho) const {
  constexpr int kSamples = 1024;
  double best = 0.0;
  for (int k = 0; k < kSamples; ++k) {
    const auto p = point(std::polar(rho, 2.0 * kPi * k / kSamples));
    best = std::max(best, std::sqrt(std::norm(p[0]) + std::norm(p[1])));
  }
  return best;
}

double Parametrization::radius_for(double radius) const {
  require(radius > 0.0, "radius must be positive");
  double hi = 1.0;
  while (max_norm_on_circle(hi) < radius) {
    hi *= 2.0;
    require(hi < 1e12, "parametrization does not reach the requested radius");
  }
  double lo = 0.0;
  while (hi - lo > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    (max_norm_on_circle(mid) < radius ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Parametrization make_parametrization(const RationalPoly& gamma1, const RationalPoly& gamma2, double ball_radius) {
  Parametrization p;
  p.gamma1 = gamma1;
  p.gamma2 = gamma2;
  p.g1 = NumericPoly(gamma1);
  p.g2 = NumericPoly(gamma2);
  p.dg1 = NumericPoly(gamma1.derivative(0));
  p.dg2 = NumericPoly(gamma2.derivative(0));
  p.disc_radius = p.radius_for(ball_radius);
  return p;
}

Parametrization normalize(const CurveSpec& spec) {
  return make_parametrization(spec.gamma1, spec.gamma2, spec.ball_radius);
}

StructureForm structure_form(const CurveSpec& spec) {
  StructureForm form;
  form.numerator = RationalPoly::constant(1, Rational(1));
  form.denominator = RationalPoly::constant(1, Rational(1));
  if (spec.kind == CurveKind::MonomialCusp || spec.kind == CurveKind::Implicit) {
    // Pullback of -2 pi i dz2 / (da/dz1): dz2 = r t^(r-1) dt, da/dz1 = c r t^(s(r-1)).
    Rational c(1);
    if (spec.kind == CurveKind::Implicit) c = spec.defining->coefficient({spec.r, 0});
    form.pole_order = (spec.r - 1) * (spec.s - 1);
    form.constant_factor = -kTwoPiI / to_double(c);
  } else {
    if (!spec.defining)
      fail(ErrorKind::InvalidInput,
           "structure form of a parametrized curve needs its defining equation (embedding data)");
    const RationalPoly& a = *spec.defining;
    const std::vector<RationalPoly> images{spec.gamma1, spec.gamma2};
    RationalPoly num = spec.gamma2.derivative(0);
    RationalPoly den = a.derivative(0).substitute(images);
    Complex sign = -kTwoPiI;
    if (den.is_zero() || num.is_zero()) {
      // On the curve da/dz1 g1' + da/dz2 g2' = 0, so g2'/(da/dz1) = -g1'/(da/dz2).
      num = spec.gamma1.derivative(0);
      den = a.derivative(1).substitute(images);
      sign = kTwoPiI;
      if (den.is_zero() || num.is_zero())
        fail(ErrorKind::InvalidInput, "defining polynomial is singular along the whole curve (not reduced)");
    }
    const int vn = valuation(num);
    const int vd = valuation(den);
    num = shift_down(num, vn);
    den = shift_down(den, vd);
    form.pole_order = vd - vn;
    require(form.pole_order >= 0, "structure form has a zero at the origin; defining polynomial is not reduced");
    if (num.total_degree() == 0 && den.total_degree() == 0) {
      form.constant_factor = sign * to_double(num.coefficient({0})) / to_double(den.coefficient({0}));
    } else {
      form.constant_factor = sign;
      form.numerator = num;
      form.denominator = den;
    }
  }
  form.num = NumericPoly(form.numerator);
  form.den = NumericPoly(form.denominator);
  return form;
}

double sing_distance(const CurveSpec& spec, Complex t) {
  if (spec.smooth) return std::numeric_limits<double>::infinity();
  const Complex z1 = NumericPoly(spec.gamma1)(t);
  const Complex z2 = NumericPoly(spec.gamma2)(t);
  return std::sqrt(std::norm(z1) + std::norm(z2));
}

std::vector<int> semigroup_elements(const CurveSpec& spec, int max_value) {
  require(max_value >= 0, "semigroup bound must be nonnegative");
  const RationalPoly& g1 = spec.gamma1;
  const RationalPoly& g2 = spec.gamma2;
  const int v1 = g1.is_zero() ? max_value + 1 : valuation(g1);
  const int v2 = g2.is_zero() ? max_value + 1 : valuation(g2);
  // Row echelon form keyed by the lowest exponent.
  std::map<int, RationalPoly> basis;
  auto insert = [&](RationalPoly p) {
    p = p.truncated(max_value);
    while (!p.is_zero()) {
      const int lead = valuation(p);
      auto it = basis.find(lead);
      if (it == basis.end()) {
        basis.emplace(lead, p);
        return;
      }
      const Rational f = p.coefficient({lead}) / it->second.coefficient({lead});
      p -= it->second * f;
    }
  };
  RationalPoly pa = RationalPoly::constant(1, Rational(1));
  for (int a = 0; a * v1 <= max_value; ++a) {
    RationalPoly pab = pa;
    for (int b = 0; a * v1 + b * v2 <= max_value; ++b) {
      insert(pab);
      pab = (pab * g2).truncated(max_value);
    }
    pa = (pa * g1).truncated(max_value);
  }
  std::vector<int> out;
  for (const auto& [lead, p] : basis) out.push_back(lead);
  return out;
}

void check_injective(const Parametrization& param) {
  const bool first_varies = !param.gamma1.is_zero();
  const RationalPoly& base = first_varies ? param.gamma1 : param.gamma2;
  const NumericPoly& other = first_varies ? param.g2 : param.g1;
  const NumericPoly& same = first_varies ? param.g1 : param.g2;
  const auto coeffs = dense_coefficients(base);
  const double disc = param.disc_radius;
  // Deterministic, generic-looking sample points.
  for (int i = 1; i <= 6; ++i) {
    const double rho = disc * (0.12 + 0.14 * i);
    for (int j = 0; j < 5; ++j) {
      const Complex tau = std::polar(rho, 0.7137 + 1.2566 * j + 0.1 * i);
      std::vector<Complex> c = coeffs;
      c[0] -= same(tau);
      for (Complex sigma : polynomial_roots(c)) {
        if (std::abs(sigma - tau) <= 1e-6 * disc || std::abs(sigma) > disc) continue;
        const Complex a = other(tau);
        const Complex b = other(sigma);
        if (std::abs(a - b) <= 1e-8 * (std::abs(a) + std::abs(b) + 1e-300))
          fail(ErrorKind::InvalidInput, "parametrization is not generically injective on the parameter disc");
      }
    }
  }
}

}  // namespace skop
