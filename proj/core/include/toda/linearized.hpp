#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "toda/grid.hpp"
#include "toda/rational_expr.hpp"
#include "toda/solution.hpp"

namespace toda {

/// Explicit kernel element for gamma = 0:
///   Phi_1 = B(z) / D_1, B = sum b_ij z^{beta_i} zbar^{beta_j},
///   Phi_{i+1} = 2 Phi_i - Phi_{i-1} + 4 e^{-u_i} Phi_{i,z zbar}, Phi_0 = 0,
/// with 4 e^{-u_i} = D_i^2 / (D_{i-1} D_{i+1}). Phi_{n+1} is the closing
/// residual and vanishes exactly on the kernel.
struct KernelElement {
  Eigen::MatrixXcd b;
  std::vector<RationalExpr> Phi;  // Phi_1..Phi_{n+1}
};

/// Throws std::invalid_argument for gamma != 0 or non-hermitian b.
KernelElement kernel_from_moments(const TodaSolution& sol, const Eigen::MatrixXcd& b);

/// phi_i = 2 Phi_i - Phi_{i-1} - Phi_{i+1} (Phi_{n+1} taken as 0).
std::vector<RationalExpr> phi_from_Phi(const KernelElement& k);

/// sup |Phi_{n+1}| / sup_{i<=n} |Phi_i| over points (0 for Phi == 0).
double closing_residual(const TodaSolution& sol, const KernelElement& k, const std::vector<complex>& points);

/// sup |Delta phi_i + sum_j a_ij e^{u_j} phi_j| / sup |e^{u_j} phi_j|, exact derivatives.
double linearized_residual(const TodaSolution& sol, const KernelElement& k, const std::vector<complex>& points);

/// Basis of hermitian (n+1)x(n+1) matrices: E_kk, E_kl + E_lk, i(E_kl - E_lk).
std::vector<Eigen::MatrixXcd> hermitian_basis(std::size_t size);

/// The closed kernel: hermitian b whose closing residual vanishes, as an
/// orthonormal basis of the numerical null space of b -> Phi_{n+1} sampled on points.
struct ClosedKernel {
  std::vector<Eigen::MatrixXcd> basis;  // closed b's
  std::vector<KernelElement> elements;
  std::vector<double> closing_singular_values;
  std::size_t closing_rank = 0;
};
ClosedKernel closed_kernel(const TodaSolution& sol, const std::vector<complex>& points, double cutoff = 1e-6);

/// Parameter chart: log lambda for every slot except the auto one, then
/// (re, im) of each admissible c in support order. Size N(gamma).
std::vector<std::string> chart_coordinates(const TodaParams& params);
/// params moved by t * direction; the auto lambda slot (the last slot when
/// none is marked) is re-solved so the product constraint still holds.
TodaParams perturb(const TodaParams& params, const std::vector<double>& direction, double t);

enum class FdLaplacian { exact, stencil };

/// phi_i(z) = [u_i(z; +h) - u_i(z; -h)] / 2h on points, with Delta phi either
/// from the exact Laplacians of the two solutions or from a five-point stencil
/// at spacing 1e-3 |z|.
struct TangentField {
  std::vector<double> direction;
  double h = 0.0;
  FdLaplacian mode = FdLaplacian::exact;
  std::vector<complex> points;
  std::vector<std::vector<double>> phi;      // [point][i]
  std::vector<std::vector<double>> lap_phi;  // [point][i]
  std::vector<std::vector<double>> eu;       // e^{u_j} of the base solution
};
/// Throws InvalidInput for a direction of the wrong size or one that leaves the chart.
TangentField tangent_fd(const TodaParams& params, const std::vector<double>& direction, double h,
                        const std::vector<complex>& points, FdLaplacian mode = FdLaplacian::exact);

/// Per equation: sup |Delta phi_i + sum_j a_ij e^{u_j} phi_j| / sup_{j,z} |e^{u_j} phi_j|.
std::vector<double> fd_residual(const CartanData& cartan, const TangentField& t);

/// Flattened phi samples of a tangent, one entry per (point, i).
Eigen::VectorXd flatten(const TangentField& t);
/// The same for explicit kernel elements.
Eigen::VectorXd flatten(const TodaSolution& sol, const KernelElement& k, const std::vector<complex>& points);

/// Numerical rank with columns normalized and cutoff relative to the largest singular value.
std::size_t numerical_rank(const Eigen::MatrixXd& m, double cutoff, std::vector<double>* singular_values = nullptr);

/// ||v - P v|| / ||v|| for the orthogonal projection onto span(columns of basis).
double projection_residual(const Eigen::MatrixXd& basis, const Eigen::VectorXd& v);

struct DimensionOptions {
  double h = 1e-4;
  double cutoff = 1e-6;
  GridSpec grid{};
};

struct TangentReport {
  std::size_t target = 0;  // N(gamma)
  std::size_t rank = 0;
  double cutoff = 0.0;
  double h = 0.0;
  std::size_t samples = 0;
  std::vector<std::string> coordinates;
  std::vector<double> singular_values;
  std::vector<double> residual_sup;  // per equation, worst direction
  /// sup |phi| on the grid and on one refinement (twice the radii and angles).
  double sup_phi = 0.0;
  double sup_phi_refined = 0.0;
  bool bounded = false;
  bool pass = false;
};
TangentReport dimension_check(const TodaParams& params, const DimensionOptions& opt = {});

}  // namespace toda
