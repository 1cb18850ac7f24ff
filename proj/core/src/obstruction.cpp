#include <algorithm>
#include <map>

#include "skop/obstruction.hpp"
#include "skop/test_form.hpp"

namespace skop {

namespace {

using Dense = std::vector<Rational>;

// Coefficients 0..order of p(t)^k, truncated.
std::vector<Dense> truncated_powers(const RationalPoly& p, int max_power, int order) {
  Dense base(static_cast<std::size_t>(order) + 1);
  for (const auto& [e, c] : p.terms())
    if (e[0] <= order) base[static_cast<std::size_t>(e[0])] = c;
  std::vector<Dense> out;
  Dense one(base.size());
  one[0] = 1;
  out.push_back(one);
  for (int k = 1; k <= max_power; ++k) {
    const Dense& prev = out.back();
    Dense next(base.size());
    for (std::size_t i = 0; i < prev.size(); ++i) {
      if (prev[i] == 0) continue;
      for (std::size_t j = 0; i + j < base.size(); ++j)
        if (base[j] != 0) next[i + j] += prev[i] * base[j];
    }
    out.push_back(std::move(next));
  }
  return out;
}

Dense multiply(const Dense& a, const Dense& b) {
  Dense out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < out.size(); ++j)
      if (b[j] != 0) out[i + j] += a[i] * b[j];
  }
  return out;
}

using SparseRow = std::map<std::size_t, Rational>;

// row -= factor * pivot
void eliminate(SparseRow& row, const SparseRow& pivot, const Rational& factor) {
  for (const auto& [k, v] : pivot) {
    auto [it, inserted] = row.emplace(k, -factor * v);
    if (!inserted) {
      it->second -= factor * v;
      if (it->second == 0) row.erase(it);
    }
  }
}

int leading_valuation(const RationalPoly& p) {
  require(p.nvars() == 1 && !p.is_zero(), "parametrization components must be nonzero univariate polynomials");
  require(!p.has_negative_exponents(), "parametrization components must be polynomials");
  const int v = p.valuation_in(0);
  require(v >= 1, "parametrization components must vanish at t = 0");
  return v;
}

}  // namespace

std::string_view to_string(Feasibility f) noexcept {
  switch (f) {
    case Feasibility::Feasible: return "Feasible";
    case Feasibility::Infeasible: return "Infeasible";
    case Feasibility::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

int JetSystem::row_index(int m, int n) const {
  const auto it = std::find(rows.begin(), rows.end(), std::array<int, 2>{m, n});
  return it == rows.end() ? -1 : static_cast<int>(it - rows.begin());
}

RationalPoly conj_primitive(const RationalPoly& mu) {
  require(mu.nvars() == 2, "mu must be a polynomial in (t, conj t)");
  require(!mu.has_negative_exponents(), "mu must be a polynomial");
  RationalPoly out(2);
  for (const auto& [e, c] : mu.terms()) out.add_term({e[0], e[1] + 1}, c / (e[1] + 1));
  return out;
}

JetSystem build_jet_system(const RationalPoly& gamma1, const RationalPoly& gamma2, const RationalPoly& mu,
                           int ambient_order, std::optional<int> parameter_order) {
  require(ambient_order >= 0, "ambient order must be nonnegative");
  const int v1 = leading_valuation(gamma1);
  const int v2 = leading_valuation(gamma2);
  const int v_min = std::min(v1, v2);
  const int v_max = std::max(v1, v2);

  JetSystem sys;
  sys.gamma1 = gamma1;
  sys.gamma2 = gamma2;
  sys.ambient_order = ambient_order;
  sys.primitive = conj_primitive(mu);
  const int target_order = sys.primitive.total_degree();

  // Ambient terms of degree > D start at parameter order v_min (D + 1).
  const int determined = v_min * (ambient_order + 1) - 1;
  if (determined < target_order) {
    const int needed = (target_order + v_min) / v_min - 1;
    fail(ErrorKind::InvalidInput, "ambient order " + std::to_string(ambient_order) +
                                      " cannot reach the target jet of order " + std::to_string(target_order) +
                                      "; need order >= " + std::to_string(needed));
  }
  const int order = parameter_order.value_or(std::min(determined, target_order + v_max));
  require(order >= target_order && order <= determined,
          "parameter order must lie between the target order and the determined order " +
              std::to_string(determined));
  sys.parameter_order = order;

  for (int s = 0; s <= order; ++s)
    for (int n = 0; n <= s; ++n) sys.rows.push_back({s - n, n});
  std::map<std::array<int, 2>, std::size_t> row_of;
  for (std::size_t i = 0; i < sys.rows.size(); ++i) row_of[sys.rows[i]] = i;

  const int max_power = order / v_min;
  const auto p1 = truncated_powers(gamma1, max_power, order);
  const auto p2 = truncated_powers(gamma2, max_power, order);

  std::vector<std::vector<Rational>> columns;
  for (int total = 0; total <= ambient_order; ++total) {
    for (int a = total; a >= 0; --a) {
      for (int b = total - a; b >= 0; --b) {
        for (int c = total - a - b; c >= 0; --c) {
          const int d = total - a - b - c;
          if (v1 * (a + b) + v2 * (c + d) > order) continue;  // vanishes in the truncation
          const Dense hol = multiply(p1[static_cast<std::size_t>(a)], p2[static_cast<std::size_t>(c)]);
          const Dense anti = multiply(p1[static_cast<std::size_t>(b)], p2[static_cast<std::size_t>(d)]);
          std::vector<Rational> col(sys.rows.size());
          bool nonzero = false;
          for (int m = 0; m <= order; ++m) {
            if (hol[static_cast<std::size_t>(m)] == 0) continue;
            for (int n = 0; m + n <= order; ++n) {
              if (anti[static_cast<std::size_t>(n)] == 0) continue;
              col[row_of.at({m, n})] = hol[static_cast<std::size_t>(m)] * anti[static_cast<std::size_t>(n)];
              nonzero = true;
            }
          }
          if (!nonzero) continue;
          sys.ambient_columns.push_back({a, b, c, d});
          columns.push_back(std::move(col));
        }
      }
    }
  }
  for (int m = 0; m <= order; ++m) {
    sys.holomorphic_columns.push_back(m);
    std::vector<Rational> col(sys.rows.size());
    col[row_of.at({m, 0})] = 1;
    columns.push_back(std::move(col));
  }

  sys.matrix.assign(sys.rows.size(), std::vector<Rational>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < sys.rows.size(); ++i) sys.matrix[i][j] = columns[j][i];

  sys.target.assign(sys.rows.size(), Rational(0));
  for (const auto& [e, c] : sys.primitive.terms()) sys.target[row_of.at({e[0], e[1]})] = c;
  return sys;
}

Rational pair_certificate(const JetSystem& sys, const std::vector<Rational>& y, const RationalPoly& p) {
  require(p.nvars() == 2, "pairing expects a polynomial in (t, conj t)");
  require(y.size() == sys.rows.size(), "certificate length mismatch");
  Rational sum = 0;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] != 0) sum += y[i] * p.coefficient({sys.rows[i][0], sys.rows[i][1]});
  return sum;
}

FeasibilityResult feasibility(const JetSystem& sys) {
  const std::size_t cols = sys.column_count();
  const std::size_t target_col = cols;
  const std::size_t rows = sys.rows.size();

  // Augmented rows [A | b | I].
  std::vector<SparseRow> work(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j)
      if (sys.matrix[i][j] != 0) work[i][j] = sys.matrix[i][j];
    if (sys.target[i] != 0) work[i][target_col] = sys.target[i];
    work[i][target_col + 1 + i] = 1;
  }

  std::vector<bool> used(rows, false);
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (column, row)
  for (std::size_t j = 0; j < cols; ++j) {
    std::size_t best = rows;
    for (std::size_t i = 0; i < rows; ++i) {
      if (used[i] || !work[i].contains(j)) continue;
      if (best == rows || work[i].size() < work[best].size()) best = i;
    }
    if (best == rows) continue;
    used[best] = true;
    const Rational inv = 1 / work[best].at(j);
    for (auto& [k, v] : work[best]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == best) continue;
      const auto it = work[i].find(j);
      if (it == work[i].end()) continue;
      const Rational factor = it->second;
      eliminate(work[i], work[best], factor);
    }
    pivots.emplace_back(j, best);
  }

  FeasibilityResult result;
  result.rank = static_cast<int>(pivots.size());
  result.witness = RationalPoly(4);
  result.holomorphic_part = RationalPoly(2);
  result.certificate_poly = RationalPoly(2);

  // Unused rows have zero A-part; a nonzero b entry there certifies infeasibility.
  std::size_t cert_row = rows;
  for (std::size_t i = 0; i < rows; ++i) {
    if (used[i] || !work[i].contains(target_col)) continue;
    if (cert_row == rows || work[i].size() < work[cert_row].size()) cert_row = i;
  }
  if (cert_row != rows) {
    result.verdict = Feasibility::Infeasible;
    result.certificate.assign(rows, Rational(0));
    for (const auto& [k, v] : work[cert_row]) {
      if (k <= target_col) continue;
      const std::size_t r = k - target_col - 1;
      result.certificate[r] = v;
      result.certificate_poly.add_term({sys.rows[r][0], sys.rows[r][1]}, v);
    }
    result.certificate_value = work[cert_row].at(target_col);
    result.detail = "target is not in the span of pulled-back jets up to order " +
                    std::to_string(sys.parameter_order);
    return result;
  }

  for (const auto& [j, i] : pivots) {
    const auto it = work[i].find(target_col);
    if (it == work[i].end()) continue;
    if (j < sys.ambient_columns.size()) {
      const auto& e = sys.ambient_columns[j];
      result.witness.add_term({e[0], e[1], e[2], e[3]}, it->second);
    } else {
      result.holomorphic_part.add_term({sys.holomorphic_columns[j - sys.ambient_columns.size()], 0}, it->second);
    }
  }

  // Exact check of f(gamma, conj gamma) = psi + h without truncation.
  Parametrization param;
  param.gamma1 = sys.gamma1;
  param.gamma2 = sys.gamma2;
  const RationalPoly defect = pullback_polynomial(param, result.witness) - result.holomorphic_part - sys.primitive;
  if (defect.is_zero()) {
    result.verdict = Feasibility::Feasible;
    result.detail = "witness is an exact polynomial identity";
  } else {
    result.verdict = Feasibility::Inconclusive;
    result.detail = "jet system solvable to order " + std::to_string(sys.parameter_order) +
                    "; this is necessary but not sufficient for a smooth solution";
  }
  return result;
}

MonotonicityReport check_monotonicity(const RationalPoly& gamma1, const RationalPoly& gamma2, const RationalPoly& mu,
                                      int from, int to) {
  require(from <= to, "monotonicity range must be increasing");
  const int order = build_jet_system(gamma1, gamma2, mu, from).parameter_order;
  MonotonicityReport report;
  bool infeasible_seen = false;
  for (int d = from; d <= to; ++d) {
    const Feasibility v = feasibility(build_jet_system(gamma1, gamma2, mu, d, order)).verdict;
    if (infeasible_seen && v != Feasibility::Infeasible) report.monotone = false;
    infeasible_seen = infeasible_seen || v == Feasibility::Infeasible;
    report.verdicts.emplace_back(d, v);
  }
  return report;
}

}  // namespace skop
