#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "skop/errors.hpp"

namespace skop {

using Complex = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline Complex to_complex(const Rational& q) { return {to_double(q), 0.0}; }
inline Complex to_complex(const Complex& c) { return c; }

/// Sparse multivariate Laurent polynomial. Exponent vectors have the fixed
/// arity nvars(); zero coefficients are never stored.
template <class Coeff>
class Poly {
 public:
  using Exponent = std::vector<int>;
  using TermMap = std::map<Exponent, Coeff>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Coeff& c) {
    Poly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }

  static Poly variable(std::size_t nvars, std::size_t index, int power = 1) {
    require(index < nvars, "variable index out of range");
    Exponent e(nvars, 0);
    e[index] = power;
    Poly p(nvars);
    p.add_term(e, Coeff(1));
    return p;
  }

  /// Univariate polynomial from dense coefficients c[0] + c[1] x + ...
  static Poly univariate(const std::vector<Coeff>& dense) {
    Poly p(1);
    for (std::size_t i = 0; i < dense.size(); ++i) p.add_term({static_cast<int>(i)}, dense[i]);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const Coeff& c) {
    require(e.size() == nvars_, "exponent arity mismatch");
    if (c == Coeff(0)) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Coeff(0)) terms_.erase(it);
    }
  }

  Coeff coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  int degree_in(std::size_t var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  /// Lowest exponent of `var` among the terms; 0 for the zero polynomial.
  int valuation_in(std::size_t var) const {
    if (terms_.empty()) return 0;
    int v = terms_.begin()->first[var];
    for (const auto& [e, c] : terms_) v = std::min(v, e[var]);
    return v;
  }

  bool has_negative_exponents() const {
    for (const auto& [e, c] : terms_)
      for (int k : e)
        if (k < 0) return true;
    return false;
  }

  Poly operator-() const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  Poly& operator+=(const Poly& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const Coeff& s) {
    if (s == Coeff(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Coeff& s) { return a *= s; }
  friend Poly operator*(const Coeff& s, Poly a) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_arity(b);
    Poly r(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Poly pow(unsigned n) const {
    Poly result = constant(nvars_, Coeff(1));
    Poly base = *this;
    while (n) {
      if (n & 1u) result = result * base;
      n >>= 1u;
      if (n) base = base * base;
    }
    return result;
  }

  Poly derivative(std::size_t var) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponent d = e;
      d[var] -= 1;
      r.add_term(d, c * Coeff(e[var]));
    }
    return r;
  }

  /// Composition: variable k is replaced by images[k]; all images share an arity.
  Poly substitute(const std::vector<Poly>& images) const {
    require(images.size() == nvars_, "substitute: one image per variable required");
    require(!has_negative_exponents(), "substitute: Laurent terms not supported");
    const std::size_t out_vars = images.empty() ? 0 : images.front().nvars();
    std::vector<std::vector<Poly>> powers(nvars_);
    for (std::size_t k = 0; k < nvars_; ++k) {
      powers[k].push_back(constant(out_vars, Coeff(1)));
      for (int j = 1; j <= degree_in(k); ++j) powers[k].push_back(powers[k].back() * images[k]);
    }
    Poly r(out_vars);
    for (const auto& [e, c] : terms_) {
      Poly term = constant(out_vars, c);
      for (std::size_t k = 0; k < nvars_; ++k)
        if (e[k] > 0) term = term * powers[k][e[k]];
      r += term;
    }
    return r;
  }

  /// Moves variable k to slot placement[k] of a ring with new_nvars variables.
  Poly embedded(const std::vector<std::size_t>& placement, std::size_t new_nvars) const {
    require(placement.size() == nvars_, "embedded: placement arity mismatch");
    Poly r(new_nvars);
    for (const auto& [e, c] : terms_) {
      Exponent ne(new_nvars, 0);
      for (std::size_t k = 0; k < nvars_; ++k) ne[placement[k]] += e[k];
      r.add_term(ne, c);
    }
    return r;
  }

  /// Drops all terms whose total degree exceeds `max_degree`.
  Poly truncated(int max_degree) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      if (s <= max_degree) r.terms_.emplace(e, c);
    }
    return r;
  }

  template <class Out>
  Poly<Out> cast() const {
    Poly<Out> r(nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, convert<Out>(c));
    return r;
  }

 private:
  template <class Out>
  static Out convert(const Coeff& c) {
    if constexpr (std::is_same_v<Out, Complex>) {
      return to_complex(c);
    } else {
      return Out(c);
    }
  }

  void check_arity(const Poly& o) const {
    require(nvars_ == o.nvars_, "polynomial arity mismatch");
  }

  std::size_t nvars_ = 0;
  TermMap terms_;
};

using RationalPoly = Poly<Rational>;
using ComplexPoly = Poly<Complex>;

/// Flattened polynomial for repeated double-precision evaluation.
class NumericPoly {
 public:
  NumericPoly() = default;
  explicit NumericPoly(const RationalPoly& p);
  explicit NumericPoly(const ComplexPoly& p);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return coeffs_.empty(); }

  Complex operator()(std::span<const Complex> values) const;
  Complex operator()(Complex x) const { return (*this)(std::span<const Complex>(&x, 1)); }
  Complex operator()(Complex x, Complex y) const {
    const Complex v[2] = {x, y};
    return (*this)(std::span<const Complex>(v, 2));
  }

 private:
  void build(std::size_t nvars, std::vector<std::pair<std::vector<int>, Complex>> terms);

  std::size_t nvars_ = 0;
  std::vector<Complex> coeffs_;
  std::vector<int> exps_;  // row-major, nvars_ per term
  std::vector<int> min_exp_, max_exp_;
};

/// Integer power by repeated squaring; negative exponents invert.
Complex ipow(Complex z, int n);

/// Polynomial conjugation for real (rational) coefficients: swaps each
/// variable with its partner in `conj_of` (partner -1 means the variable is
/// not allowed to appear).
RationalPoly conjugate_variables(const RationalPoly& p, const std::vector<int>& conj_of);

// --- text form -------------------------------------------------------------

/// Variable table for the expression parser. `conj_of[k]` is the index of the
/// conjugate of variable k, or -1 if conj() of it is rejected.
struct VariableSet {
  std::vector<std::string> names;
  std::vector<int> conj_of;
  std::vector<std::pair<std::string, std::size_t>> aliases;

  std::size_t size() const { return names.size(); }
  int index_of(std::string_view name) const;
};

/// Variables t, conj(t) (alias tau).
const VariableSet& parameter_variables();
/// Variables z1, conj(z1), z2, conj(z2) (aliases z, w, zeta1, zeta2).
const VariableSet& ambient_variables();
/// Holomorphic ambient variables z1, z2 (aliases z, w, zeta1, zeta2).
const VariableSet& holomorphic_ambient_variables();

/// Parses an expression built from rational literals, variables, conj(...),
/// + - *, integer powers (negative allowed) and parentheses.
RationalPoly parse_polynomial(std::string_view text, const VariableSet& vars);

std::string format_polynomial(const RationalPoly& p, const VariableSet& vars);

std::string format_rational(const Rational& q);

}  // namespace skop
