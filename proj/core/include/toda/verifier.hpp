#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toda/grid.hpp"
#include "toda/quadrature.hpp"
#include "toda/solution.hpp"

namespace toda {

/// Delta U_i + e^{u_i} from exact derivatives, divided by sup_grid e^{u_i}.
struct PdeResidual {
  std::vector<double> sup;   // per equation
  std::vector<double> mean;
  std::vector<double> scale; // sup_grid e^{u_i}
  bool positive = true;      // every D_k > 0 on the grid
  double max_imag_ratio = 0.0;
};
/// Throws std::invalid_argument if a point is 0.
PdeResidual pde_residual(const TodaSolution& sol, const std::vector<complex>& points);

/// |z|^{2 alpha_k} e^{-U_k} along shrinking circles.
struct OriginConstant {
  std::size_t k = 0;
  std::vector<double> radii;
  std::vector<double> values;  // ray means, one per radius
  double ray_spread = 0.0;     // max relative deviation across rays at the smallest radius
  double constant = 0.0;       // value at the smallest radius
  double expected = 0.0;       // 2^{k(k-1)} det(M_{0..k-1}) times the squared Vandermonde
  double expected_rel_error = 0.0;
  bool positive = false;
  bool convergent = false;     // successive differences shrink, the last below 1e-2 relative
};
/// r = 1e-2, 1e-3, 1e-4 on 8 rays.
std::vector<OriginConstant> origin_regularity(const TodaSolution& sol);

struct SlopeFit {
  std::size_t i = 0;
  double slope = 0.0;
  double expected = 0.0;  // -(4 + 2 gamma_{n+1-i})
  double deviation = 0.0;
  bool pass = false;
};
/// Least squares of u_i against log r over r in [1e3, 1e5] on 4 rays.
SlopeFit asymptotic_slope(const TodaSolution& sol, std::size_t i, double tol = 1e-3);

/// max over radii and i of |e^{u_i}(r e^{i t}) - mean_t| / mean_t.
double radial_symmetry(const TodaSolution& sol, const GridSpec& grid);

struct ResidualTolerances {
  double pde = 1e-9;
  double slope = 1e-3;
  double radial = 1e-10;
};

struct ResidualReport {
  GridSpec grid;
  PdeResidual pde;
  std::vector<OriginConstant> origin;
  std::vector<SlopeFit> slopes;
  /// Only checked when the admissible support is empty.
  std::optional<double> radial_symmetry;
  bool pass = false;
};
ResidualReport residual_report(const TodaSolution& sol, const GridSpec& grid, const ResidualTolerances& tol = {});

struct DeterminantReport {
  std::size_t top_terms = 0;
  double top_value = 0.0;      // D_{n+1} at the first grid point
  double top_target = 0.0;     // 2^{-n(n+1)}
  double top_rel_error = 0.0;  // max over the grid
  std::vector<double> recursion;  // k = 1..n, term-level
  std::vector<double> scaling;    // k = 1..min(n+1, 3), shift alpha_1, term-level
  std::optional<ProductFormulaResult> product;  // radial cases only
  bool pass = false;
};
struct DeterminantTolerances {
  double top = 1e-10;
  double recursion = 1e-9;
  double scaling = 1e-10;
  double product = 1e-10;
};
DeterminantReport determinant_report(const TodaSolution& sol, const std::vector<complex>& points,
                                     const DeterminantTolerances& tol = {});

struct MassEntry {
  std::size_t i = 0;
  double mass = 0.0;
  double target = 0.0;
  double rel_error = 0.0;
  PlaneQuadrature quad;
};
/// int e^{u_i} dA with decay rates 2 + 2 gamma_i (origin) and 2 + 2 gamma_{n+1-i} (infinity).
MassEntry quantize(const TodaSolution& sol, std::size_t i, double tol);

struct CartanRow {
  std::size_t i = 0;
  double value = 0.0;  // sum_j a_ij mass_j
  double target = 0.0; // 4 pi (2 + gamma_i + gamma_{n+1-i})
  double rel_error = 0.0;
};

struct QuantizationReport {
  double tol = 0.0;
  std::vector<MassEntry> masses;
  std::vector<CartanRow> rows;
  bool converged = false;
  bool pass = false;  // converged, masses within tol, rows within 2 tol
};
QuantizationReport quantization_report(const TodaSolution& sol, double tol);

}  // namespace toda
