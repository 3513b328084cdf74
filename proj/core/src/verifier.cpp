#include "toda/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "toda/determinant.hpp"
#include "toda/params.hpp"
#include "toda/parallel.hpp"

namespace toda {

namespace {

std::vector<complex> rays(double r, std::size_t count, double offset) {
  std::vector<complex> out;
  for (std::size_t j = 0; j < count; ++j) {
    out.push_back(std::polar(r, offset + 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count)));
  }
  return out;
}

}  // namespace

PdeResidual pde_residual(const TodaSolution& sol, const std::vector<complex>& points) {
  const std::size_t n = sol.n();
  for (const complex z : points) {
    if (z == complex(0.0, 0.0)) throw std::invalid_argument("pde_residual: the grid must exclude z = 0");
  }
  std::vector<PointFields> fields(points.size());
  parallel_for(points.size(), [&](std::size_t p) { fields[p] = sol.fields(points[p]); });

  PdeResidual out;
  out.sup.assign(n, 0.0);
  out.mean.assign(n, 0.0);
  out.scale.assign(n, 0.0);
  for (const auto& f : fields) {
    out.positive = out.positive && f.positive;
    out.max_imag_ratio = std::max(out.max_imag_ratio, f.max_imag_ratio);
    for (std::size_t i = 0; i < n; ++i) out.scale[i] = std::max(out.scale[i], f.eu[i]);
  }
  for (const auto& f : fields) {
    for (std::size_t i = 0; i < n; ++i) {
      const double r = std::abs(f.lapU[i] + f.eu[i]) / out.scale[i];
      out.sup[i] = std::max(out.sup[i], std::isfinite(r) ? r : std::numeric_limits<double>::infinity());
      out.mean[i] += r / static_cast<double>(fields.size());
    }
  }
  return out;
}

std::vector<OriginConstant> origin_regularity(const TodaSolution& sol) {
  const std::size_t n = sol.n();
  const auto& data = sol.params.data;
  const std::vector<double> radii{1e-2, 1e-3, 1e-4};
  constexpr std::size_t kRays = 8;
  std::vector<OriginConstant> out(n);
  for (std::size_t k = 1; k <= n; ++k) {
    auto& c = out[k - 1];
    c.k = k;
    c.radii = radii;
    c.expected = origin_constant(sol, k);
    c.positive = true;
    const double alpha = data.alpha_value(k);
    for (double r : radii) {
      double sum = 0.0;
      std::vector<double> vals;
      for (const complex z : rays(r, kRays, 0.1)) {
        const auto d = sol.eval.D(k, z);
        const double re = d.mantissa.real();
        if (!(re > 0.0)) c.positive = false;
        const double v = std::exp(2.0 * alpha * std::log(r) + static_cast<double>(k * (k - 1)) * std::numbers::ln2 +
                                  std::log(std::abs(re)) + d.log_scale);
        vals.push_back(v);
        sum += v;
      }
      const double mean = sum / kRays;
      c.values.push_back(mean);
      c.ray_spread = 0.0;
      for (double v : vals) c.ray_spread = std::max(c.ray_spread, std::abs(v - mean) / mean);
    }
    c.constant = c.values.back();
    c.positive = c.positive && c.constant > 0.0;
    c.expected_rel_error = std::abs(c.constant - c.expected) / std::abs(c.expected);
    const double d1 = std::abs(c.values[1] - c.values[0]);
    const double d2 = std::abs(c.values[2] - c.values[1]);
    const double scale = std::abs(c.constant);
    c.convergent = d2 <= std::max(d1, 1e-14 * scale) && d2 < 1e-2 * scale;
  }
  return out;
}

SlopeFit asymptotic_slope(const TodaSolution& sol, std::size_t i, double tol) {
  const std::size_t n = sol.n();
  constexpr std::size_t kRadii = 11;
  constexpr std::size_t kRays = 4;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t a = 0; a < kRadii; ++a) {
    const double s = std::log(1e3) + (std::log(1e5) - std::log(1e3)) * static_cast<double>(a) / (kRadii - 1);
    for (const complex z : rays(std::exp(s), kRays, 0.3)) {
      const double u = sol.eval.u_values(z)[i - 1];
      sx += s;
      sy += u;
      sxx += s * s;
      sxy += s * u;
      ++count;
    }
  }
  const double m = static_cast<double>(count);
  SlopeFit fit;
  fit.i = i;
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.expected = -(4.0 + 2.0 * sol.gamma().value(n + 1 - i));
  fit.deviation = std::abs(fit.slope - fit.expected);
  fit.pass = fit.deviation <= tol;
  return fit;
}

double radial_symmetry(const TodaSolution& sol, const GridSpec& grid) {
  const auto radii = log_radii(grid.r0, grid.r1, grid.nr);
  const auto angles = grid_angles(grid.ntheta);
  std::vector<double> worst(radii.size(), 0.0);
  parallel_for(radii.size(), [&](std::size_t a) {
    std::vector<std::vector<double>> eu;
    for (double t : angles) eu.push_back(sol.fields(std::polar(radii[a], t)).eu);
    for (std::size_t i = 0; i < sol.n(); ++i) {
      double mean = 0.0;
      for (const auto& e : eu) mean += e[i] / static_cast<double>(eu.size());
      for (const auto& e : eu) worst[a] = std::max(worst[a], std::abs(e[i] - mean) / mean);
    }
  });
  return *std::max_element(worst.begin(), worst.end());
}

ResidualReport residual_report(const TodaSolution& sol, const GridSpec& grid, const ResidualTolerances& tol) {
  ResidualReport r;
  r.grid = grid;
  r.pde = pde_residual(sol, make_grid(grid));
  r.origin = origin_regularity(sol);
  for (std::size_t i = 1; i <= sol.n(); ++i) r.slopes.push_back(asymptotic_slope(sol, i, tol.slope));
  if (admissible_support(sol.params.data).empty()) r.radial_symmetry = radial_symmetry(sol, grid);

  bool ok = r.pde.positive;
  for (double s : r.pde.sup) ok = ok && s <= tol.pde;
  for (const auto& c : r.origin) ok = ok && c.positive && c.convergent;
  for (const auto& s : r.slopes) ok = ok && s.pass;
  if (r.radial_symmetry) ok = ok && *r.radial_symmetry <= tol.radial;
  r.pass = ok;
  return r;
}

DeterminantReport determinant_report(const TodaSolution& sol, const std::vector<complex>& points,
                                     const DeterminantTolerances& tol) {
  const std::size_t n = sol.n();
  const Gamma& g = sol.gamma();
  DeterminantReport r;
  r.top_target = std::ldexp(1.0, -static_cast<int>(n * (n + 1)));
  r.top_terms = sol.det(n + 1).size();
  const CompiledPoly top(sol.det(n + 1), g);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const complex v = top(points[p]);
    if (p == 0) r.top_value = v.real();
    r.top_rel_error = std::max(r.top_rel_error, std::abs(v - r.top_target) / r.top_target);
  }
  for (std::size_t k = 1; k <= n; ++k) r.recursion.push_back(det_recursion_check(sol, k));
  for (std::size_t k = 1; k <= std::min<std::size_t>(n + 1, 3); ++k) {
    r.scaling.push_back(scaling_identity_check(sol.f, sol.params.data.alpha[0], k, g));
  }
  if (sol.params.c.empty()) r.product = product_formula_check(sol);

  bool ok = r.top_terms == 1 && r.top_rel_error <= tol.top;
  for (double d : r.recursion) ok = ok && d <= tol.recursion;
  for (double d : r.scaling) ok = ok && d <= tol.scaling;
  if (r.product) ok = ok && r.product->single_term && r.product->exponent_match && r.product->coeff_rel_error <= tol.product;
  r.pass = ok;
  return r;
}

MassEntry quantize(const TodaSolution& sol, std::size_t i, double tol) {
  const std::size_t n = sol.n();
  const Gamma& g = sol.gamma();
  PlaneQuadratureOptions opt;
  opt.tol = tol;
  opt.rate_inner = 2.0 + 2.0 * g.value(i);
  opt.rate_outer = 2.0 + 2.0 * g.value(n + 1 - i);
  MassEntry e;
  e.i = i;
  e.quad = plane_integral([&](complex z) { return sol.eval.u_values(z)[i - 1]; }, opt);
  e.mass = e.quad.value;
  e.target = mass_targets(sol.params.data).mass[i - 1];
  e.rel_error = std::abs(e.mass - e.target) / e.target;
  return e;
}

QuantizationReport quantization_report(const TodaSolution& sol, double tol) {
  const std::size_t n = sol.n();
  QuantizationReport r;
  r.tol = tol;
  r.masses.resize(n);
  parallel_for(n, [&](std::size_t i) { r.masses[i] = quantize(sol, i + 1, tol); });
  const auto targets = mass_targets(sol.params.data);
  const auto& A = sol.params.data.cartan.A;
  r.converged = true;
  bool ok = true;
  for (const auto& m : r.masses) {
    r.converged = r.converged && m.quad.converged;
    ok = ok && m.rel_error <= tol;
  }
  for (std::size_t i = 0; i < n; ++i) {
    CartanRow row;
    row.i = i + 1;
    for (std::size_t j = 0; j < n; ++j) row.value += A[i][j] * r.masses[j].mass;
    row.target = targets.cartan_row[i];
    row.rel_error = std::abs(row.value - row.target) / row.target;
    ok = ok && row.rel_error <= 2.0 * tol;
    r.rows.push_back(row);
  }
  r.pass = r.converged && ok;
  return r;
}

}  // namespace toda
