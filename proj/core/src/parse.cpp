#include <algorithm>
#include <cctype>
#include <sstream>

#include "skop/poly.hpp"

namespace skop {

int VariableSet::index_of(std::string_view name) const {
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == name) return static_cast<int>(k);
  for (const auto& [alias, k] : aliases)
    if (alias == name) return static_cast<int>(k);
  return -1;
}

const VariableSet& parameter_variables() {
  static const VariableSet vars{{"t", "conj(t)"}, {1, 0}, {{"tau", 0}}};
  return vars;
}

const VariableSet& ambient_variables() {
  static const VariableSet vars{{"z1", "conj(z1)", "z2", "conj(z2)"},
                                {1, 0, 3, 2},
                                {{"z", 0}, {"w", 2}, {"zeta1", 0}, {"zeta2", 2}}};
  return vars;
}

const VariableSet& holomorphic_ambient_variables() {
  static const VariableSet vars{{"z1", "z2"}, {-1, -1}, {{"z", 0}, {"w", 1}, {"zeta1", 0}, {"zeta2", 1}}};
  return vars;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VariableSet& vars) : text_(text), vars_(vars) {}

  RationalPoly parse() {
    RationalPoly p = expression();
    skip_space();
    if (pos_ != text_.size()) error("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    std::ostringstream os;
    os << "polynomial parse error at offset " << pos_ << " in \"" << text_ << "\": " << what;
    fail(ErrorKind::InvalidInput, os.str());
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalPoly constant(const Rational& q) const { return RationalPoly::constant(vars_.size(), q); }

  RationalPoly expression() {
    RationalPoly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RationalPoly term() {
    RationalPoly acc = power();
    while (accept('*')) acc = acc * power();
    return acc;
  }

  RationalPoly power() {
    RationalPoly base = unary();
    if (accept('^')) {
      const int n = integer_exponent();
      if (n >= 0) return base.pow(static_cast<unsigned>(n));
      // Negative powers are limited to single monomials.
      if (base.terms().size() != 1) error("negative power of a non-monomial");
      const auto& [e, c] = *base.terms().begin();
      RationalPoly r(vars_.size());
      std::vector<int> ne(e.size());
      for (std::size_t k = 0; k < e.size(); ++k) ne[k] = e[k] * n;
      Rational coeff = 1;
      for (int j = 0; j < -n; ++j) coeff /= c;
      r.add_term(ne, coeff);
      return r;
    }
    return base;
  }

  int integer_exponent() {
    skip_space();
    bool negative = false;
    if (accept('(')) {
      const int n = integer_exponent();
      if (!accept(')')) error("expected ')' after exponent");
      return n;
    }
    if (accept('-')) negative = true;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected integer exponent");
    const int n = std::stoi(std::string(text_.substr(start, pos_ - start)));
    return negative ? -n : n;
  }

  RationalPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  RationalPoly primary() {
    skip_space();
    if (pos_ >= text_.size()) error("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RationalPoly inner = expression();
      if (!accept(')')) error("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return constant(number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::string name = identifier();
      if (name == "conj") {
        if (!accept('(')) error("expected '(' after conj");
        RationalPoly inner = expression();
        if (!accept(')')) error("expected ')' after conj argument");
        for (int k : vars_.conj_of)
          if (k < 0) error("conj() is not allowed here");
        return conjugate_variables(inner, vars_.conj_of);
      }
      const int index = vars_.index_of(name);
      if (index < 0) error("unknown variable '" + name + "'");
      return RationalPoly::variable(vars_.size(), static_cast<std::size_t>(index));
    }
    error(std::string("unexpected character '") + c + "'");
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Rational number() {
    Rational value = 0;
    bool digits = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
      digits = true;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      Rational scale = 1;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        scale /= 10;
        value += scale * (text_[pos_] - '0');
        ++pos_;
        digits = true;
      }
    }
    if (!digits) error("malformed number");
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) error("malformed fraction");
      const Rational denom(boost::multiprecision::cpp_int(std::string(text_.substr(start, pos_ - start))));
      if (denom == 0) error("division by zero");
      value /= denom;
    }
    return value;
  }

  std::string_view text_;
  const VariableSet& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalPoly parse_polynomial(std::string_view text, const VariableSet& vars) {
  return Parser(text, vars).parse();
}

std::string format_rational(const Rational& q) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(q);
  if (boost::multiprecision::denominator(q) != 1) os << '/' << boost::multiprecision::denominator(q);
  return os.str();
}

std::string format_polynomial(const RationalPoly& p, const VariableSet& vars) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first reads more naturally.
  std::vector<std::pair<std::vector<int>, Rational>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (int k : a.first) da += k;
    for (int k : b.first) db += k;
    return da > db;
  });
  for (const auto& [e, c] : terms) {
    Rational coeff = c;
    if (first) {
      if (coeff < 0) {
        os << '-';
        coeff = -coeff;
      }
    } else {
      os << (coeff < 0 ? " - " : " + ");
      if (coeff < 0) coeff = -coeff;
    }
    first = false;
    bool wrote = false;
    if (coeff != 1) {
      os << format_rational(coeff);
      wrote = true;
    }
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (wrote) os << '*';
      os << vars.names[k];
      if (e[k] != 1) os << '^' << e[k];
      wrote = true;
    }
    if (!wrote) os << '1';
  }
  return os.str();
}

}  // namespace skop
