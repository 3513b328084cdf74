#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "toda/rational_expr.hpp"
#include "toda/solution.hpp"

namespace toda {

/// Exact rational expressions for the conserved quantities of one solution.
struct WInvariants {
  std::vector<AtomPtr> atoms;      // D_1..D_n
  std::vector<RationalExpr> Uz;    // U_{k,z}, k = 1..n
  std::vector<RationalExpr> Uzzb;  // U_{k,z zbar}
  /// W[k-1][j-1] for 1 <= k <= j <= n (entries with j < k are empty).
  std::vector<std::vector<RationalExpr>> W;
  /// W_1^j = -f^{(j+1)}/f for every j (the seeds).
  std::vector<RationalExpr> seeds;
  /// W_k^k from the closed form in U_{i,z}, U_{i,zz}.
  std::vector<RationalExpr> diagonal;

  const RationalExpr& at(std::size_t k, std::size_t j) const { return W[k - 1][j - 1]; }
};

/// Numerator terms allowed in any single W_k^j before giving up.
inline constexpr std::size_t kInvariantTermBudget = 400000;

/// Seeds W_1^j, diagonal closed form, and the d/dz recursion
/// W_k^j = (U_{k-1,z} - U_{k,z}) W_k^{j-1} + W_{k,z}^{j-1} + W_{k-1}^{j-1} for k < j.
/// Throws BudgetExceeded when an expression passes term_budget numerator terms.
WInvariants w_invariants(const TodaSolution& sol, std::size_t term_budget = kInvariantTermBudget);

/// Z_n = W_n^n, Z_k = W_k^n + U_{k,z} Z_{k+1} + sum_{j=k}^{n-2} W_k^j Z_{j+2}; index k-1.
std::vector<RationalExpr> z_invariants(const TodaSolution& sol, const WInvariants& w,
                                       std::size_t term_budget = kInvariantTermBudget);

/// Coefficients w_1..w_n of prod_i (b - beta_i) in the falling-factorial basis;
/// w_k multiplies b(b-1)..(b-k+2). The degree-n coefficient is always zero.
struct IndicialCoefficients {
  std::vector<double> w;
  std::vector<Rational> exact;  // filled for exact gamma
  /// P(beta_i) = 0 checked in rational arithmetic (exact gamma only).
  bool roots_exact = false;
};
IndicialCoefficients indicial_coefficients(const ExponentData& data);

/// z^{n+1} f^{(n+1)} + sum_{k<n} w_{k+1} z^k f^{(k)} assembled in the algebra.
struct OdeResidual {
  BiExpPoly operator_image;   // should be empty up to rounding residue
  double cancellation = 0.0;  // max |coeff| / weight over its terms
  double pointwise = 0.0;     // max |L f(z)| / sum of constituent magnitudes
};
OdeResidual ode_residual(const TodaSolution& sol, const std::vector<complex>& points);

/// max over k and points of |Z_{k,zbar}(z)| |z|^{n+3-k} / (1 + |w_k|).
double antiholomorphy_check(const TodaSolution& sol, const std::vector<RationalExpr>& Z,
                            const std::vector<complex>& points);

struct ZConstant {
  std::size_t k = 0;
  complex median;      // median of Z_k z^{n+2-k} over points (real, imag separately)
  double spread = 0.0; // max |value - median| / max(1, |w_k|)
  double indicial = 0.0;
  double rel_error = 0.0;  // |median - w_k| / max(1, |w_k|)
};

struct InvariantReport {
  std::size_t n = 0;
  std::vector<double> w_indicial;
  std::vector<std::string> w_exact;
  bool roots_exact = false;
  std::vector<ZConstant> z;
  /// Cross-checks against -W_{k,zbar}^j / U_{k,z zbar}: |a - b| / max(1, |a|),
  /// divided by the evaluation condition number of W_{k,zbar}^j at that point.
  double diagonal_consistency = 0.0;    // closed form W_{k+1}^{k+1}
  double definition_consistency = 0.0;  // every W_{k+1}^j
  double definition_raw = 0.0;          // same, without the condition number
  double seed_consistency = 0.0;        // seeds vs the k = 1 recursion
  double antiholomorphy = 0.0;
  double ode_cancellation = 0.0;
  double ode_pointwise = 0.0;
  /// max |W_j^n| over points; only meaningful when gamma = 0.
  double top_row_max = 0.0;
  bool gamma_zero = false;
  bool pass = false;
};

struct InvariantTolerances {
  double z_constant = 1e-8;
  double consistency = 1e-10;
  double antiholomorphy = 1e-8;
  double ode = 1e-9;
  double top_row = 1e-10;
  std::size_t term_budget = kInvariantTermBudget;
};

InvariantReport invariant_report(const TodaSolution& sol, const std::vector<complex>& points,
                                 const InvariantTolerances& tol = {});

}  // namespace toda
