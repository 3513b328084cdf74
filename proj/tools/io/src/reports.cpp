#include "toda/io/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "toda/parallel.hpp"

namespace toda::io {

namespace {

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string fixed(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return buf;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

json complex_json(complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
  return buf;
}

json to_json(const PlaneQuadrature& q) {
  return {{"value", q.value},     {"error_estimate", q.error_estimate}, {"s_lo", q.s_lo},
          {"s_hi", q.s_hi},       {"tail", q.tail},                     {"theta_nodes", q.theta_nodes},
          {"evaluations", q.evaluations}, {"converged", q.converged}};
}

json to_json(const ResidualReport& r) {
  json j;
  j["grid"] = {{"r0", r.grid.r0}, {"r1", r.grid.r1}, {"nr", r.grid.nr}, {"ntheta", r.grid.ntheta}};
  j["pde"] = {{"sup", r.pde.sup},
              {"mean", r.pde.mean},
              {"scale", r.pde.scale},
              {"positive", r.pde.positive},
              {"max_imag_ratio", r.pde.max_imag_ratio}};
  j["origin"] = json::array();
  for (const auto& o : r.origin) {
    j["origin"].push_back({{"k", o.k},
                           {"radii", o.radii},
                           {"values", o.values},
                           {"ray_spread", o.ray_spread},
                           {"constant", o.constant},
                           {"expected", o.expected},
                           {"expected_rel_error", o.expected_rel_error},
                           {"positive", o.positive},
                           {"convergent", o.convergent}});
  }
  j["slopes"] = json::array();
  for (const auto& s : r.slopes) {
    j["slopes"].push_back({{"i", s.i},
                           {"slope", s.slope},
                           {"expected", s.expected},
                           {"deviation", s.deviation},
                           {"pass", s.pass}});
  }
  j["radial_symmetry"] = r.radial_symmetry ? json(*r.radial_symmetry) : json(nullptr);
  j["pass"] = r.pass;
  return j;
}

json to_json(const DeterminantReport& r) {
  json j;
  j["top_terms"] = r.top_terms;
  j["top_value"] = r.top_value;
  j["top_target"] = r.top_target;
  j["top_rel_error"] = r.top_rel_error;
  j["recursion"] = r.recursion;
  j["scaling"] = r.scaling;
  if (r.product) {
    j["product"] = {{"single_term", r.product->single_term},
                    {"exponent_match", r.product->exponent_match},
                    {"coeff_rel_error", r.product->coeff_rel_error},
                    {"coeff", complex_json(r.product->coeff)},
                    {"expected", complex_json(r.product->expected)}};
  } else {
    j["product"] = nullptr;
  }
  j["pass"] = r.pass;
  return j;
}

json to_json(const InvariantReport& r) {
  json j;
  j["n"] = r.n;
  j["w_indicial"] = r.w_indicial;
  j["w_exact"] = r.w_exact;
  j["roots_exact"] = r.roots_exact;
  j["z"] = json::array();
  for (const auto& z : r.z) {
    j["z"].push_back({{"k", z.k},
                      {"median", complex_json(z.median)},
                      {"spread", z.spread},
                      {"indicial", z.indicial},
                      {"rel_error", z.rel_error}});
  }
  j["diagonal_consistency"] = r.diagonal_consistency;
  j["definition_consistency"] = r.definition_consistency;
  j["definition_raw"] = r.definition_raw;
  j["seed_consistency"] = r.seed_consistency;
  j["antiholomorphy"] = r.antiholomorphy;
  j["ode_cancellation"] = r.ode_cancellation;
  j["ode_pointwise"] = r.ode_pointwise;
  j["top_row_max"] = r.top_row_max;
  j["gamma_zero"] = r.gamma_zero;
  j["pass"] = r.pass;
  return j;
}

json to_json(const QuantizationReport& r) {
  json j;
  j["tol"] = r.tol;
  j["masses"] = json::array();
  for (const auto& m : r.masses) {
    j["masses"].push_back({{"i", m.i},
                           {"mass", m.mass},
                           {"target", m.target},
                           {"rel_error", m.rel_error},
                           {"quad", to_json(m.quad)}});
  }
  j["rows"] = json::array();
  for (const auto& c : r.rows) {
    j["rows"].push_back({{"i", c.i}, {"value", c.value}, {"target", c.target}, {"rel_error", c.rel_error}});
  }
  j["converged"] = r.converged;
  j["pass"] = r.pass;
  return j;
}

json to_json(const TangentReport& r) {
  return {{"target", r.target},
          {"rank", r.rank},
          {"cutoff", r.cutoff},
          {"h", r.h},
          {"samples", r.samples},
          {"coordinates", r.coordinates},
          {"singular_values", r.singular_values},
          {"residual_sup", r.residual_sup},
          {"sup_phi", r.sup_phi},
          {"sup_phi_refined", r.sup_phi_refined},
          {"bounded", r.bounded},
          {"pass", r.pass}};
}

std::string to_text(const ResidualReport& r) {
  std::ostringstream out;
  out << "residuals on grid r in [" << r.grid.r0 << ", " << r.grid.r1 << "], " << r.grid.nr << " x " << r.grid.ntheta
      << "\n";
  for (std::size_t i = 0; i < r.pde.sup.size(); ++i) {
    out << "  pde eq " << i + 1 << ": sup " << sci(r.pde.sup[i]) << "  mean " << sci(r.pde.mean[i]) << "\n";
  }
  out << "  D_k positive: " << (r.pde.positive ? "yes" : "no") << "\n";
  for (const auto& o : r.origin) {
    out << "  origin k=" << o.k << ": constant " << sci(o.constant) << "  expected " << sci(o.expected)
        << "  rel " << sci(o.expected_rel_error) << "  " << verdict(o.positive && o.convergent) << "\n";
  }
  for (const auto& s : r.slopes) {
    out << "  slope u_" << s.i << ": " << fixed(s.slope) << "  expected " << fixed(s.expected) << "  "
        << verdict(s.pass) << "\n";
  }
  if (r.radial_symmetry) out << "  radial symmetry: " << sci(*r.radial_symmetry) << "\n";
  out << "residuals: " << verdict(r.pass) << "\n";
  return out.str();
}

std::string to_text(const DeterminantReport& r) {
  std::ostringstream out;
  out << "determinants\n";
  out << "  D_{n+1}: " << r.top_terms << " term(s), value " << format_double(r.top_value) << "  target "
      << format_double(r.top_target) << "  rel " << sci(r.top_rel_error) << "\n";
  for (std::size_t k = 0; k < r.recursion.size(); ++k) {
    out << "  recursion k=" << k + 1 << ": " << sci(r.recursion[k]) << "\n";
  }
  for (std::size_t k = 0; k < r.scaling.size(); ++k) {
    out << "  scaling k=" << k + 1 << ": " << sci(r.scaling[k]) << "\n";
  }
  if (r.product) {
    out << "  product formula: single term " << (r.product->single_term ? "yes" : "no") << ", exponent "
        << (r.product->exponent_match ? "match" : "mismatch") << ", rel " << sci(r.product->coeff_rel_error) << "\n";
  }
  out << "determinants: " << verdict(r.pass) << "\n";
  return out.str();
}

std::string to_text(const InvariantReport& r) {
  std::ostringstream out;
  out << "invariants\n";
  for (const auto& z : r.z) {
    out << "  Z_" << z.k << " z^" << r.n + 2 - z.k << ": " << format_double(z.median.real()) << "  indicial "
        << format_double(z.indicial) << "  rel " << sci(z.rel_error) << "  spread " << sci(z.spread) << "\n";
  }
  out << "  recursion consistency: diagonal " << sci(r.diagonal_consistency) << "  definition "
      << sci(r.definition_consistency) << "  seeds " << sci(r.seed_consistency) << "\n";
  out << "  antiholomorphy: " << sci(r.antiholomorphy) << "\n";
  out << "  ode: cancellation " << sci(r.ode_cancellation) << "  pointwise " << sci(r.ode_pointwise) << "\n";
  if (r.gamma_zero) out << "  top row max |W_j^n|: " << sci(r.top_row_max) << "\n";
  out << "invariants: " << verdict(r.pass) << "\n";
  return out.str();
}

std::string to_text(const QuantizationReport& r) {
  std::ostringstream out;
  out << "quantization (tol " << sci(r.tol) << ")\n";
  out << "  i  mass/pi             target/pi           rel error\n";
  for (const auto& m : r.masses) {
    out << "  " << m.i << "  " << fixed(m.mass / std::numbers::pi) << "  " << fixed(m.target / std::numbers::pi) << "  " << sci(m.rel_error)
        << (m.quad.converged ? "" : "  (not converged)") << "\n";
  }
  if (!r.rows.empty()) out << "  cartan rows, sum_j a_ij mass_j:\n";
  for (const auto& c : r.rows) {
    out << "  " << c.i << "  " << fixed(c.value / std::numbers::pi) << " pi  target " << fixed(c.target / std::numbers::pi)
        << " pi  rel " << sci(c.rel_error) << "\n";
  }
  out << "quantization: " << verdict(r.pass) << "\n";
  return out.str();
}

std::string to_text(const TangentReport& r) {
  std::ostringstream out;
  out << "nondegeneracy: rank " << r.rank << " of target " << r.target << " (cutoff " << sci(r.cutoff) << ", h "
      << sci(r.h) << ", " << r.samples << " samples)\n";
  out << "  singular values:";
  for (double s : r.singular_values) out << " " << sci(s);
  out << "\n  fd residual: " << sci(max_of(r.residual_sup)) << "\n";
  out << "  sup |phi|: " << sci(r.sup_phi) << "  refined " << sci(r.sup_phi_refined) << "  "
      << (r.bounded ? "bounded" : "unbounded") << "\n";
  out << "nondegeneracy: " << verdict(r.pass) << "\n";
  return out.str();
}

std::string sample_csv(const TodaSolution& sol, const std::vector<complex>& points) {
  const std::size_t n = sol.n();
  std::vector<std::vector<double>> u(points.size());
  parallel_for(points.size(), [&](std::size_t p) { u[p] = sol.eval.u_values(points[p]); });
  std::ostringstream out;
  out << "re_z,im_z";
  for (std::size_t i = 1; i <= n; ++i) out << ",u_" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",eu_" << i;
  out << "\n";
  for (std::size_t p = 0; p < points.size(); ++p) {
    out << format_double(points[p].real()) << "," << format_double(points[p].imag());
    for (double v : u[p]) out << "," << format_double(v);
    for (double v : u[p]) out << "," << format_double(std::exp(v));
    out << "\n";
  }
  return out.str();
}

OracleSample oracle_csv(const TodaSolution& sol, const Su3Oracle& oracle, const std::vector<complex>& points) {
  std::vector<std::vector<double>> u(points.size());
  std::vector<std::array<double, 2>> o(points.size());
  parallel_for(points.size(), [&](std::size_t p) {
    u[p] = sol.eval.u_values(points[p]);
    o[p] = oracle.log_eu(points[p]);
  });
  OracleSample s;
  std::ostringstream out;
  out << "re_z,im_z,u_1,u_2,eu_1,eu_2,oracle_eu_1,oracle_eu_2,rel_diff_1,rel_diff_2\n";
  for (std::size_t p = 0; p < points.size(); ++p) {
    out << format_double(points[p].real()) << "," << format_double(points[p].imag());
    for (double v : u[p]) out << "," << format_double(v);
    for (double v : u[p]) out << "," << format_double(std::exp(v));
    for (double v : o[p]) out << "," << format_double(std::exp(v));
    for (std::size_t i = 0; i < 2; ++i) {
      const double d = std::abs(std::expm1(u[p][i] - o[p][i]));
      s.max_rel_diff = std::max(s.max_rel_diff, d);
      out << "," << format_double(d);
    }
    out << "\n";
  }
  s.csv = out.str();
  return s;
}

}  // namespace toda::io
