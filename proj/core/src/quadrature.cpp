#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "skop/regularization.hpp"

namespace skop {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kRoundoff = 1e-16;

struct Accum {
  Complex value{};
  double abs = 0.0;  // integral of |f|, used for relative tolerances and noise
  double err = 0.0;

  Accum& operator+=(const Accum& o) {
    value += o.value;
    abs += o.abs;
    err += o.err;
    return *this;
  }
};

// One Gauss-Kronrod 15 panel of a function returning ring accumulations.
template <class G>
Accum gk15(G&& g, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Accum fv[15];
  fv[7] = g(c);
  for (int j = 0; j < 7; ++j) {
    fv[j] = g(c - h * kXgk[j]);
    fv[14 - j] = g(c + h * kXgk[j]);
  }
  Complex resk = kWgk[7] * fv[7].value;
  Complex resg = kWg[3] * fv[7].value;
  double abs = kWgk[7] * fv[7].abs;
  double inner_err = kWgk[7] * fv[7].err;
  for (int j = 0; j < 7; ++j) {
    const Complex pair = fv[j].value + fv[14 - j].value;
    resk += kWgk[j] * pair;
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
    abs += kWgk[j] * (fv[j].abs + fv[14 - j].abs);
    inner_err += kWgk[j] * (fv[j].err + fv[14 - j].err);
  }
  const Complex mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fv[7].value - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv[j].value - mean) + std::abs(fv[14 - j].value - mean));
  Accum out;
  out.value = resk * h;
  out.abs = abs * std::abs(h);
  resasc *= std::abs(h);
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  err = std::max(err, 50.0 * kRoundoff * out.abs);
  out.err = err + inner_err * std::abs(h);
  return out;
}

template <class G>
Accum gk15_composite(G&& g, double a, double b, int pieces) {
  Accum total;
  const double w = (b - a) / pieces;
  for (int i = 0; i < pieces; ++i) total += gk15(g, a + i * w, (i + 1 == pieces) ? b : a + (i + 1) * w);
  return total;
}

struct Disc {
  Complex center;
  double radius;
};

class PolarEngine {
 public:
  PolarEngine(const std::function<Complex(Complex)>& f, const QuadratureSpec& q, const std::vector<Disc>& discs)
      : f_(f), q_(q), discs_(discs), subpanels_((q.radial_points + 14) / 15) {}

  // Origin-centred ring; rings passing close to a singular point are graded
  // toward it instead of using the uniform trapezoid.
  Accum centred_ring(double r) const {
    const Disc* nearest = nullptr;
    double gap = std::numeric_limits<double>::infinity();
    for (const Disc& d : discs_) {
      const double g = std::abs(r - std::abs(d.center));
      if (g < gap) {
        gap = g;
        nearest = &d;
      }
    }
    if (nearest && gap < r / 16.0) {
      const double theta = std::arg(nearest->center);
      return arc(r, theta, theta + 2.0 * kPi, std::max(gap, 0.25 * nearest->radius) / r);
    }
    return ring(Complex{}, r);
  }

  // Trapezoid over the full circle |tau - center| = r, including the Jacobian r.
  Accum ring(Complex center, double r) const {
    Accum out;
    if (r == 0.0) return out;
    int n = q_.angular_points;
    Complex sum_even{}, sum_odd{};
    double abs_sum = 0.0;
    for (int k = 0; k < n; ++k) {
      const Complex v = f_(center + std::polar(r, 2.0 * kPi * k / n));
      (k % 2 == 0 ? sum_even : sum_odd) += v;
      abs_sum += std::abs(v);
    }
    Complex t_half = sum_even * (2.0 * kPi / (n / 2));
    Complex t_full = (sum_even + sum_odd) * (2.0 * kPi / n);
    double err = std::abs(t_full - t_half);
    double abs_int = abs_sum * 2.0 * kPi / n;
    Complex sum = sum_even + sum_odd;
    while (err > q_.adaptive_tolerance * abs_int && 2 * n <= q_.max_angular_points) {
      Complex mid{};
      double mid_abs = 0.0;
      for (int k = 0; k < n; ++k) {
        const Complex v = f_(center + std::polar(r, 2.0 * kPi * (k + 0.5) / n));
        mid += v;
        mid_abs += std::abs(v);
      }
      sum += mid;
      abs_sum += mid_abs;
      n *= 2;
      const Complex t_new = sum * (2.0 * kPi / n);
      err = std::abs(t_new - t_full);
      t_full = t_new;
      abs_int = abs_sum * 2.0 * kPi / n;
    }
    out.value = t_full * r;
    out.abs = abs_int * r;
    out.err = err * r;
    return out;
  }

  // Integral over theta in [a, b] of f(r e^{i theta}) r, graded toward both
  // ends with initial angular scale alpha.
  Accum arc(double r, double a, double b, double alpha) const {
    std::vector<double> cuts{a};
    const double half = 0.5 * (b - a);
    std::vector<double> offsets;
    double step = std::max(0.5 * alpha, 1e-12);
    double pos = step;
    while (pos < half) {
      offsets.push_back(pos);
      pos += step;
      step *= 2.0;
    }
    for (double o : offsets) cuts.push_back(a + o);
    cuts.push_back(a + half);
    for (auto it = offsets.rbegin(); it != offsets.rend(); ++it) cuts.push_back(b - *it);
    cuts.push_back(b);
    auto g = [&](double theta) {
      Accum s;
      const Complex v = f_(std::polar(r, theta));
      s.value = v * r;
      s.abs = std::abs(v) * r;
      return s;
    };
    Accum total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += gk15(g, cuts[i], cuts[i + 1]);
    return total;
  }

  // Rings centred at the origin over [a, b], no excision.
  Accum radial_panel(double a, double b) const {
    auto g = [&](double r) { return centred_ring(r); };
    return gk15_composite(g, a, b, subpanels_);
  }

  // Annular panel |p| - rho <= |tau| <= |p| + rho with the disc around p excised.
  // The sine substitution removes the square-root behaviour at both ends.
  Accum excised_panel(const Disc& d) const {
    const double m = std::abs(d.center);
    const double theta_p = std::arg(d.center);
    auto g = [&](double phi) {
      const double r = m + d.radius * std::sin(phi);
      const double jac = d.radius * std::cos(phi);
      Accum s;
      if (r <= 0.0 || jac <= 0.0) return s;
      const double c = std::clamp((r * r + m * m - d.radius * d.radius) / (2.0 * r * m), -1.0, 1.0);
      const double beta = std::acos(c);
      s = arc(r, theta_p + beta, theta_p + 2.0 * kPi - beta, d.radius / r);
      s.value *= jac;
      s.abs *= jac;
      s.err *= jac;
      return s;
    };
    return gk15_composite(g, -0.5 * kPi, 0.5 * kPi, std::max(2, subpanels_));
  }

  // Local polar grid over the excised disc itself.
  Accum local_disc(const Disc& d) const {
    auto g = [&](double r) { return ring(d.center, r); };
    Accum total = gk15_composite(g, 0.0, 0.5 * d.radius, subpanels_);
    total += gk15_composite(g, 0.5 * d.radius, d.radius, subpanels_);
    return total;
  }

 private:
  const std::function<Complex(Complex)>& f_;
  const QuadratureSpec& q_;
  const std::vector<Disc>& discs_;
  int subpanels_;
};

bool near_value(double x, double y, double scale) { return std::abs(x - y) <= 1e-13 * scale; }

}  // namespace

Complex extrapolate_to_zero(std::span<const double> h, std::span<const Complex> v) {
  require(h.size() == v.size() && !h.empty(), "extrapolate_to_zero: size mismatch");
  // Neville's scheme evaluated at 0.
  std::vector<Complex> p(v.begin(), v.end());
  const std::size_t n = h.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double hi = h[i];
      const double hj = h[i + level];
      p[i] = (hi * p[i + 1] - hj * p[i]) / (hi - hj);
    }
  }
  return p[0];
}

CurrentValue pv_integrate(const DiscIntegrand& integrand, const QuadratureSpec& quad,
                          std::span<const Complex> singular_set) {
  quad.validate();
  require(static_cast<bool>(integrand.density), "pv_integrate: missing density");
  const double R = integrand.outer_radius;
  const double r_lo = integrand.inner_radius;
  require(R > 0.0 && r_lo >= 0.0 && r_lo < R, "pv_integrate: invalid radii");

  const bool plain = quad.exclusion == ExclusionPolicy::None;
  bool origin_pv = false;
  std::vector<Complex> points;
  if (!plain) {
    for (Complex p : singular_set) {
      if (std::abs(p) <= 1e-14 * R) {
        origin_pv = true;
      } else {
        points.push_back(p);
      }
    }
    if (quad.exclusion == ExclusionPolicy::AroundParameterOrigin) origin_pv = true;
    if (quad.exclusion == ExclusionPolicy::AroundTarget && quad.exclusion_target) {
      const Complex t = *quad.exclusion_target;
      if (std::abs(t) <= 1e-14 * R) {
        origin_pv = true;
      } else {
        points.push_back(t);
      }
    }
  }
  if (r_lo > 0.0) origin_pv = false;

  std::vector<double> knots;
  for (double k : integrand.knots)
    if (k > r_lo && k < R) knots.push_back(k);

  // Excision radii: half the distance to everything that would spoil
  // smoothness on the local grid (origin, annulus edges, knots, other points).
  std::vector<Disc> discs;
  std::sort(points.begin(), points.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Complex p = points[i];
    const double m = std::abs(p);
    if (m >= R || m <= r_lo) continue;
    double rho = 0.5 * std::min(m - r_lo, R - m);
    for (std::size_t j = 0; j < points.size(); ++j)
      if (j != i) rho = std::min(rho, 0.25 * std::abs(m - std::abs(points[j])));
    // A knot much closer than everything else is swallowed by the disc; the
    // local grids then cross a C^3 seam instead of shrinking onto it.
    const double free_rho = rho;
    for (double k : knots)
      if (std::abs(m - k) > 0.125 * free_rho) rho = std::min(rho, 0.5 * std::abs(m - k));
    for (double k : knots)
      if (std::abs(m - k) <= 0.125 * free_rho) rho = std::min(rho, 0.25 * free_rho);
    std::erase_if(knots, [&](double k) { return std::abs(m - k) < rho; });
    if (!(rho > 1e-12 * R))
      fail(ErrorKind::Unsupported, "pv_integrate: singular point too close to a knot, the boundary, or another point");
    discs.push_back({p, rho});
  }

  std::vector<double> cuts{R};
  for (double k : knots) cuts.push_back(k);
  for (const Disc& d : discs) {
    const double m = std::abs(d.center);
    cuts.push_back(m - d.radius);
    cuts.push_back(m + d.radius);
    for (double s = 2.0 * d.radius; m + s < R; s *= 2.0) cuts.push_back(m + s);
    for (double s = 2.0 * d.radius; m - s > r_lo; s *= 2.0) cuts.push_back(m - s);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [R](double a, double b) { return near_value(a, b, R); }),
             cuts.end());

  const double r0 = origin_pv ? cuts.front() : r_lo;
  PolarEngine engine(integrand.density, quad, discs);

  auto is_excised = [&](double a, double b) -> const Disc* {
    for (const Disc& d : discs) {
      const double m = std::abs(d.center);
      if (near_value(a, m - d.radius, R) && near_value(b, m + d.radius, R)) return &d;
    }
    return nullptr;
  };

  Accum regular;
  double prev = r0;
  for (double c : cuts) {
    if (c <= prev) continue;
    const double a = prev;
    const double b = c;
    prev = c;
    if (const Disc* d = is_excised(a, b)) {
      regular += engine.excised_panel(*d);
      continue;
    }
    if (a > 0.0 && b / a > 2.0) {
      double lo = a;
      while (lo < b) {
        const double hi = (2.0 * lo < b && b / (2.0 * lo) > 1.01) ? 2.0 * lo : b;
        regular += engine.radial_panel(lo, hi);
        lo = hi;
      }
    } else {
      regular += engine.radial_panel(a, b);
    }
  }
  for (const Disc& d : discs) regular += engine.local_disc(d);

  CurrentValue out;
  if (!origin_pv) {
    out.value = regular.value;
    out.error_estimate = regular.err;
    out.trace.push_back({r_lo, regular.value});
    return out;
  }

  // Angular-first rings on [eps_{j+1}, eps_j], eps_j = r0 2^-j.
  const double tol = quad.adaptive_tolerance;
  Complex partial = regular.value;
  double err = regular.err;
  double scale = regular.abs;
  std::vector<double> eps_list;
  std::vector<Complex> sums;
  std::vector<double> contrib;
  Complex best = partial;
  double best_err = 0.0;
  bool converged = false;
  double eps = r0;
  for (int level = 0; level < quad.max_levels; ++level) {
    const Accum piece = engine.radial_panel(0.5 * eps, eps);
    eps *= 0.5;
    partial += piece.value;
    err += piece.err;
    if (level == 0) scale = std::max(scale, piece.abs);
    scale = std::max(scale, std::abs(partial));
    eps_list.push_back(eps);
    sums.push_back(partial);
    contrib.push_back(std::abs(piece.value));
    out.trace.push_back({eps, partial});

    const double noise = kRoundoff * piece.abs;
    if (sums.size() >= 3) {
      const std::size_t n = sums.size();
      const Complex extrap = extrapolate_to_zero(std::span(eps_list).subspan(n - 3, 3), std::span(sums).subspan(n - 3, 3));
      const Complex extrap_prev =
          n >= 4 ? extrapolate_to_zero(std::span(eps_list).subspan(n - 4, 3), std::span(sums).subspan(n - 4, 3))
                 : sums[n - 2];
      best = extrap;
      best_err = std::abs(extrap - extrap_prev);
      const bool decaying = contrib[n - 1] <= 0.75 * contrib[n - 2] || contrib[n - 1] <= tol * scale;
      if (decaying && best_err <= tol * scale) {
        converged = true;
        break;
      }
      if (n >= 5 && contrib[n - 1] > tol * scale && contrib[n - 1] >= 0.9 * contrib[n - 2] &&
          contrib[n - 2] >= 0.9 * contrib[n - 3] && contrib[n - 3] >= 0.9 * contrib[n - 4]) {
        fail(ErrorKind::NonConvergent,
             "pv_integrate: exclusion-radius sequence does not converge (non-principal-value singularity)");
      }
      if (noise > tol * scale && decaying) {
        // Roundoff from cancelling rings dominates; accept what we have.
        best_err += noise;
        converged = true;
        break;
      }
    }
  }
  if (!converged) {
    fail(ErrorKind::NonConvergent, "pv_integrate: exclusion-radius sequence failed the Cauchy criterion");
  }
  out.value = best;
  out.error_estimate = err + best_err;
  return out;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  require(n >= 1, "gauss_legendre: n must be positive");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

std::vector<QuadratureNode> annulus_rule(double inner, double outer, int radial_points, int angular_points) {
  require(outer > inner && inner >= 0.0, "annulus_rule: invalid radii");
  require(angular_points >= 2, "annulus_rule: need at least two angular points");
  std::vector<double> x, w;
  gauss_legendre(radial_points, x, w);
  std::vector<QuadratureNode> rule;
  rule.reserve(static_cast<std::size_t>(radial_points * angular_points));
  const double c = 0.5 * (outer + inner);
  const double h = 0.5 * (outer - inner);
  for (int i = 0; i < radial_points; ++i) {
    const double r = c + h * x[static_cast<std::size_t>(i)];
    const double wr = h * w[static_cast<std::size_t>(i)] * r * 2.0 * kPi / angular_points;
    for (int k = 0; k < angular_points; ++k)
      rule.push_back({std::polar(r, 2.0 * kPi * k / angular_points), wr});
  }
  return rule;
}

}  // namespace skop
