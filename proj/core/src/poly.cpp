#include "skop/poly.hpp"

#include <algorithm>

namespace skop {

Complex ipow(Complex z, int n) {
  if (n < 0) return Complex(1.0) / ipow(z, -n);
  Complex result(1.0);
  while (n) {
    if (n & 1) result *= z;
    n >>= 1;
    if (n) z *= z;
  }
  return result;
}

NumericPoly::NumericPoly(const RationalPoly& p) {
  std::vector<std::pair<std::vector<int>, Complex>> terms;
  for (const auto& [e, c] : p.terms()) terms.emplace_back(e, to_complex(c));
  build(p.nvars(), std::move(terms));
}

NumericPoly::NumericPoly(const ComplexPoly& p) {
  std::vector<std::pair<std::vector<int>, Complex>> terms(p.terms().begin(), p.terms().end());
  build(p.nvars(), std::move(terms));
}

void NumericPoly::build(std::size_t nvars, std::vector<std::pair<std::vector<int>, Complex>> terms) {
  nvars_ = nvars;
  min_exp_.assign(nvars, 0);
  max_exp_.assign(nvars, 0);
  for (const auto& [e, c] : terms) {
    coeffs_.push_back(c);
    for (std::size_t k = 0; k < nvars; ++k) {
      exps_.push_back(e[k]);
      min_exp_[k] = std::min(min_exp_[k], e[k]);
      max_exp_[k] = std::max(max_exp_[k], e[k]);
    }
  }
}

Complex NumericPoly::operator()(std::span<const Complex> values) const {
  require(values.size() == nvars_, "NumericPoly: wrong number of arguments");
  if (coeffs_.empty()) return {};
  // Power tables per variable, indexed from the minimal exponent.
  constexpr std::size_t kStack = 64;
  Complex stack_buf[kStack * 4];
  std::vector<Complex> heap_buf;
  std::vector<std::size_t> offset(nvars_ + 1, 0);
  for (std::size_t k = 0; k < nvars_; ++k)
    offset[k + 1] = offset[k] + static_cast<std::size_t>(max_exp_[k] - min_exp_[k] + 1);
  Complex* table = stack_buf;
  if (offset[nvars_] > kStack * 4) {
    heap_buf.resize(offset[nvars_]);
    table = heap_buf.data();
  }
  for (std::size_t k = 0; k < nvars_; ++k) {
    Complex* row = table + offset[k];
    const int lo = min_exp_[k];
    const int hi = max_exp_[k];
    Complex p = ipow(values[k], lo);
    for (int j = lo; j <= hi; ++j) {
      row[j - lo] = p;
      p *= values[k];
    }
  }
  Complex sum(0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    Complex term = coeffs_[i];
    const int* e = exps_.data() + i * nvars_;
    for (std::size_t k = 0; k < nvars_; ++k) term *= table[offset[k] + static_cast<std::size_t>(e[k] - min_exp_[k])];
    sum += term;
  }
  return sum;
}

RationalPoly conjugate_variables(const RationalPoly& p, const std::vector<int>& conj_of) {
  require(conj_of.size() == p.nvars(), "conjugate_variables: arity mismatch");
  RationalPoly r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    std::vector<int> ne(p.nvars(), 0);
    for (std::size_t k = 0; k < p.nvars(); ++k) {
      if (e[k] == 0) continue;
      require(conj_of[k] >= 0, "conj() is not defined for this variable");
      ne[static_cast<std::size_t>(conj_of[k])] += e[k];
    }
    r.add_term(ne, c);
  }
  return r;
}

}  // namespace skop
