#include "toda/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "toda/parallel.hpp"

namespace toda {

namespace {

/// |a - b| / max(1, |a|).
double rel_diff(complex a, complex b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// max over points of g(point index), evaluated in parallel with a fixed reduction order.
template <class F>
double max_over(std::size_t count, F&& g) {
  std::vector<double> vals(count, 0.0);
  parallel_for(count, [&](std::size_t i) { vals[i] = g(i); });
  double m = 0.0;
  for (double v : vals) m = std::max(m, v);
  return m;
}

const RationalExpr& within_budget(const RationalExpr& r, std::size_t budget) {
  if (r.size() > budget) {
    throw BudgetExceeded("invariant expression has " + std::to_string(r.size()) + " terms (budget " +
                         std::to_string(budget) + ")");
  }
  return r;
}

}  // namespace

WInvariants w_invariants(const TodaSolution& sol, std::size_t term_budget) {
  const std::size_t n = sol.n();
  const Gamma& g = sol.gamma();
  WInvariants w;
  for (std::size_t k = 1; k <= n; ++k) w.atoms.push_back(make_atom(sol.det(k), g));
  std::vector<RationalExpr> Uzz;
  for (std::size_t k = 1; k <= n; ++k) {
    const AtomPtr& a = w.atoms[k - 1];
    RationalExpr uz = RationalExpr(-a->dz).times_atom(a, -1);
    Uzz.push_back(rational_diff(uz, Dir::z, g));
    w.Uzzb.push_back(rational_diff(uz, Dir::zbar, g));
    w.Uz.push_back(std::move(uz));
  }

  const AtomPtr& f = w.atoms[0];
  BiExpPoly deriv = f->dz;
  for (std::size_t j = 1; j <= n; ++j) {
    deriv = differentiate(deriv, Dir::z, g);
    w.seeds.push_back(RationalExpr(-deriv).times_atom(f, -1));
  }

  RationalExpr acc(n);
  for (std::size_t k = 1; k <= n; ++k) {
    acc = acc + Uzz[k - 1] - w.Uz[k - 1] * w.Uz[k - 1];
    if (k >= 2) acc = acc + w.Uz[k - 2] * w.Uz[k - 1];
    w.diagonal.push_back(within_budget(acc, term_budget));
  }

  w.W.assign(n, std::vector<RationalExpr>(n, RationalExpr(n)));
  for (std::size_t j = 1; j <= n; ++j) w.W[0][j - 1] = w.seeds[j - 1];
  for (std::size_t k = 2; k <= n; ++k) {
    w.W[k - 1][k - 1] = w.diagonal[k - 1];
    for (std::size_t j = k + 1; j <= n; ++j) {
      const RationalExpr& prev = w.W[k - 1][j - 2];
      const RationalExpr next = (w.Uz[k - 2] - w.Uz[k - 1]) * prev + rational_diff(prev, Dir::z, g);
      w.W[k - 1][j - 1] = within_budget(within_budget(next, term_budget) + w.W[k - 2][j - 2], term_budget);
    }
  }
  return w;
}

std::vector<RationalExpr> z_invariants(const TodaSolution& sol, const WInvariants& w, std::size_t term_budget) {
  const std::size_t n = sol.n();
  std::vector<RationalExpr> Z(n, RationalExpr(n));
  Z[n - 1] = w.at(n, n);
  for (std::size_t k = n - 1; k >= 1; --k) {
    RationalExpr z = w.at(k, n) + w.Uz[k - 1] * Z[k];
    for (std::size_t j = k; j + 2 <= n; ++j) z = z + w.at(k, j) * Z[j + 1];
    Z[k - 1] = within_budget(z, term_budget);
  }
  return Z;
}

IndicialCoefficients indicial_coefficients(const ExponentData& data) {
  const std::size_t n = data.n();
  const std::size_t deg = n + 1;
  IndicialCoefficients out;
  // Stirling numbers of the second kind: b^m = sum_k S(m,k) ff_k(b).
  std::vector<std::vector<std::int64_t>> S(deg + 1, std::vector<std::int64_t>(deg + 1, 0));
  S[0][0] = 1;
  for (std::size_t m = 1; m <= deg; ++m) {
    for (std::size_t k = 1; k <= m; ++k) S[m][k] = static_cast<std::int64_t>(k) * S[m - 1][k] + S[m - 1][k - 1];
  }
  if (data.gamma.is_exact()) {
    std::vector<Rational> poly{Rational(1)};  // monomial coefficients, low to high
    for (std::size_t i = 0; i <= n; ++i) {
      const Rational b = *data.gamma.exact_evaluate(data.beta[i]);
      std::vector<Rational> next(poly.size() + 1);
      for (std::size_t m = 0; m < poly.size(); ++m) {
        next[m + 1] += poly[m];
        next[m] -= b * poly[m];
      }
      poly = std::move(next);
    }
    std::vector<Rational> ff(deg + 1);
    for (std::size_t m = 0; m <= deg; ++m) {
      for (std::size_t k = 0; k <= m; ++k) ff[k] += poly[m] * Rational(S[m][k]);
    }
    for (std::size_t k = 1; k <= n; ++k) {
      out.exact.push_back(ff[k - 1]);
      out.w.push_back(ff[k - 1].to_double());
    }
    // P(b) = ff_{n+1}(b) + sum_k w_k ff_{k-1}(b) must vanish at every root.
    out.roots_exact = ff[n].is_zero() && ff[deg] == Rational(1);
    for (std::size_t i = 0; i <= n && out.roots_exact; ++i) {
      const Rational b = *data.gamma.exact_evaluate(data.beta[i]);
      Rational value(0);
      Rational falling(1);
      for (std::size_t k = 0; k <= deg; ++k) {
        value += ff[k] * falling;
        falling *= b - Rational(static_cast<std::int64_t>(k));
      }
      if (!value.is_zero()) out.roots_exact = false;
    }
    return out;
  }
  std::vector<double> poly{1.0};
  for (std::size_t i = 0; i <= n; ++i) {
    const double b = data.beta_value(i);
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t m = 0; m < poly.size(); ++m) {
      next[m + 1] += poly[m];
      next[m] -= b * poly[m];
    }
    poly = std::move(next);
  }
  std::vector<double> ff(deg + 1, 0.0);
  for (std::size_t m = 0; m <= deg; ++m) {
    for (std::size_t k = 0; k <= m; ++k) ff[k] += poly[m] * static_cast<double>(S[m][k]);
  }
  for (std::size_t k = 1; k <= n; ++k) out.w.push_back(ff[k - 1]);
  return out;
}

OdeResidual ode_residual(const TodaSolution& sol, const std::vector<complex>& points) {
  const std::size_t n = sol.n();
  const Gamma& g = sol.gamma();
  const auto w = indicial_coefficients(sol.params.data).w;
  std::vector<BiExpPoly> parts;
  BiExpPoly deriv = sol.f;
  for (std::size_t k = 0; k <= n + 1; ++k) {
    if (k == n + 1 || k < n) {
      const double coeff = k == n + 1 ? 1.0 : w[k];
      const auto kk = static_cast<std::int64_t>(k);
      parts.push_back(deriv.shifted(ExponentVector::constant(n, kk), ExponentVector(n)).scaled(coeff));
    }
    deriv = differentiate(deriv, Dir::z, g);
  }
  OdeResidual out;
  out.operator_image = BiExpPoly(n);
  for (const auto& p : parts) out.operator_image += p;
  out.cancellation = cancellation_ratio(out.operator_image);
  const CompiledPoly image(out.operator_image, g);
  std::vector<CompiledPoly> compiled;
  for (const auto& p : parts) compiled.emplace_back(p, g);
  out.pointwise = max_over(points.size(), [&](std::size_t i) {
    const complex z = points[i];
    double scale = 0.0;
    for (const auto& c : compiled) scale += c.abs_sum(z);
    return image.empty() ? 0.0 : std::abs(image(z)) / scale;
  });
  return out;
}

double antiholomorphy_check(const TodaSolution& sol, const std::vector<RationalExpr>& Z,
                            const std::vector<complex>& points) {
  const std::size_t n = sol.n();
  const Gamma& g = sol.gamma();
  const auto w = indicial_coefficients(sol.params.data).w;
  double worst = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const CompiledRational dzb(rational_diff(Z[k - 1], Dir::zbar, g), g);
    const double p = static_cast<double>(n + 3 - k);
    worst = std::max(worst, max_over(points.size(), [&](std::size_t i) {
                       const complex z = points[i];
                       return std::abs(dzb(z)) * std::pow(std::abs(z), p) / (1.0 + std::abs(w[k - 1]));
                     }));
  }
  return worst;
}

InvariantReport invariant_report(const TodaSolution& sol, const std::vector<complex>& points,
                                 const InvariantTolerances& tol) {
  const std::size_t n = sol.n();
  const Gamma& g = sol.gamma();
  InvariantReport r;
  r.n = n;
  const auto ind = indicial_coefficients(sol.params.data);
  r.w_indicial = ind.w;
  for (const auto& e : ind.exact) r.w_exact.push_back(e.to_string());
  r.roots_exact = g.is_exact() ? ind.roots_exact : true;

  const WInvariants w = w_invariants(sol, tol.term_budget);
  const auto Z = z_invariants(sol, w, tol.term_budget);

  for (std::size_t k = 1; k <= n; ++k) {
    const CompiledRational zk(Z[k - 1], g);
    const double p = static_cast<double>(n + 2 - k);
    std::vector<complex> vals(points.size());
    parallel_for(points.size(), [&](std::size_t i) { vals[i] = zk(points[i]) * std::pow(points[i], p); });
    std::vector<double> re, im;
    for (const auto& v : vals) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    ZConstant c;
    c.k = k;
    c.median = complex(median(re), median(im));
    c.indicial = ind.w[k - 1];
    const double scale = std::max(1.0, std::abs(c.indicial));
    for (const auto& v : vals) c.spread = std::max(c.spread, std::abs(v - c.median) / scale);
    c.rel_error = std::abs(c.median - c.indicial) / scale;
    r.z.push_back(c);
  }

  // Definition cross-checks: W_{k+1}^j = -W_{k,zbar}^j / U_{k,z zbar}.
  for (std::size_t k = 1; k < n; ++k) {
    const CompiledRational uzzb(w.Uzzb[k - 1], g);
    for (std::size_t j = k + 1; j <= n; ++j) {
      const CompiledRational lhs(w.at(k + 1, j), g);
      const CompiledRational wzb(rational_diff(w.at(k, j), Dir::zbar, g), g);
      std::vector<double> raw(points.size()), dev(points.size());
      parallel_for(points.size(), [&](std::size_t i) {
        const complex z = points[i];
        raw[i] = rel_diff(lhs(z), -wzb(z) / uzzb(z));
        dev[i] = raw[i] / std::max(1.0, wzb.condition(z));
      });
      const double worst = *std::max_element(dev.begin(), dev.end());
      r.definition_raw = std::max(r.definition_raw, *std::max_element(raw.begin(), raw.end()));
      r.definition_consistency = std::max(r.definition_consistency, worst);
      if (j == k + 1) r.diagonal_consistency = std::max(r.diagonal_consistency, worst);
    }
  }
  // Seeds vs the k = 1 recursion W_1^j = -U_{1,z} W_1^{j-1} + W_{1,z}^{j-1}.
  for (std::size_t j = 2; j <= n; ++j) {
    const RationalExpr rec = -(w.Uz[0] * w.seeds[j - 2]) + rational_diff(w.seeds[j - 2], Dir::z, g);
    const CompiledRational a(rec, g), b(w.seeds[j - 1], g);
    r.seed_consistency = std::max(r.seed_consistency, max_over(points.size(), [&](std::size_t i) {
                                    return rel_diff(b(points[i]), a(points[i]));
                                  }));
  }

  r.antiholomorphy = antiholomorphy_check(sol, Z, points);
  const auto ode = ode_residual(sol, points);
  r.ode_cancellation = ode.cancellation;
  r.ode_pointwise = ode.pointwise;

  r.gamma_zero = true;
  for (std::size_t i = 1; i <= n; ++i) r.gamma_zero = r.gamma_zero && g.value(i) == 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const CompiledRational wk(w.at(k, n), g);
    r.top_row_max =
        std::max(r.top_row_max, max_over(points.size(), [&](std::size_t i) { return std::abs(wk(points[i])); }));
  }

  bool ok = r.roots_exact;
  for (const auto& c : r.z) ok = ok && c.spread <= tol.z_constant && c.rel_error <= tol.z_constant;
  ok = ok && r.definition_consistency <= tol.consistency && r.seed_consistency <= tol.consistency;
  ok = ok && r.antiholomorphy <= tol.antiholomorphy;
  ok = ok && r.ode_cancellation <= tol.ode && r.ode_pointwise <= tol.ode;
  if (r.gamma_zero) ok = ok && r.top_row_max <= tol.top_row;
  r.pass = ok;
  return r;
}

}  // namespace toda
