#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "toda/biexp.hpp"
#include "toda/params.hpp"

namespace toda {

/// P_i = z^{mu_1+..+mu_i} + sum_{j<i} c_ij z^{mu_1+..+mu_j}, i = 1..n (index i-1).
std::vector<BiExpPoly> build_P(const TodaParams& params);
/// |z|^{-2 alpha_1} (lambda_0 + sum_i lambda_i |P_i|^2), expanded.
BiExpPoly build_f(const TodaParams& params);

/// Upper-triangular B with b_kk = sqrt(lambda_k), b_jk = sqrt(lambda_k) c_kj (j < k).
Eigen::MatrixXcd moment_factor(const TodaParams& params);
/// f = sum m_ij z^{beta_i} zbar^{beta_j} from a hermitian moment matrix.
BiExpPoly f_from_moments(const ExponentData& data, const Eigen::MatrixXcd& M);

/// Upper-triangular B with positive diagonal and M = B B^H (Cholesky of the
/// index-reversed matrix). Throws std::invalid_argument if M is not positive
/// definite hermitian.
Eigen::MatrixXcd factor_moments(const Eigen::MatrixXcd& M);

/// The (lambda, c) chart point encoded by an upper-triangular factor.
struct MomentChart {
  std::vector<double> lambda;
  std::map<CIndex, complex> c;  // every strictly upper entry, admissible or not
};
MomentChart chart_from_factor(const Eigen::MatrixXcd& B);

/// Everything pointwise that the verifiers need at one z, overflow-safe.
struct PointFields {
  std::vector<double> logD;    // log D_k, k = 1..n+1 (index k-1)
  std::vector<double> U;       // U_k, k = 1..n
  std::vector<double> u;       // u_i = sum_j a_ij U_j with U_0 = U_{n+1} = 0
  std::vector<double> eu;      // e^{u_i}
  std::vector<complex> Uz;     // U_{k,z}
  std::vector<double> lapU;    // Delta U_k = -4 (D D_zzbar - D_z D_zbar) / D^2, pair-summed
  bool positive = true;        // every D_k(z) > 0
  double max_imag_ratio = 0.0; // max |Im D_k| / |D_k|
};

/// Compiled evaluators for D_k, D_{k,z} and the Laplacian numerator of log D_k.
class SolutionEvaluator {
 public:
  SolutionEvaluator() = default;
  SolutionEvaluator(const std::vector<BiExpPoly>& D, const Gamma& gamma);
  PointFields fields(complex z) const;
  /// u_1..u_n only (no derivatives); log e^{u_i} for quadrature.
  std::vector<double> u_values(complex z) const;
  std::size_t n() const { return n_; }

  /// D_k(z) as mantissa * exp(scale); k = 1..n+1.
  CompiledPoly::Scaled D(std::size_t k, complex z) const { return d_[k - 1].eval_scaled(z); }

 private:
  std::size_t n_ = 0;
  std::vector<CompiledPoly> d_, dz_;
  std::vector<CompiledPoly> wr_;  // D D_{z zbar} - D_z D_zbar, pair-summed
};

/// The explicit solution at one chart point.
struct TodaSolution {
  TodaParams params;
  std::vector<BiExpPoly> P;
  BiExpPoly f;
  std::vector<BiExpPoly> D;  // D_1..D_{n+1}
  Eigen::MatrixXcd M;
  Eigen::MatrixXcd B;
  SolutionEvaluator eval;

  std::size_t n() const { return params.n(); }
  const Gamma& gamma() const { return params.data.gamma; }
  const BiExpPoly& det(std::size_t k) const { return D.at(k - 1); }
  PointFields fields(complex z) const { return eval.fields(z); }
};

TodaSolution build_solution(TodaParams params);

/// D_{k+1} D_{k-1} - (D_k D_k,zzbar - D_k,z D_k,zbar) expanded in the algebra;
/// returns the largest |coeff| / weight of the difference (0 when it cancels exactly).
/// Pointwise evaluation of this difference loses digits wherever the two
/// products on the right nearly cancel, so the comparison is term-level.
double det_recursion_check(const TodaSolution& sol, std::size_t k);

/// det_k(|z|^{2 beta} f) - |z|^{2 k beta} det_k(f), term-level as above.
double scaling_identity_check(const BiExpPoly& f, const ExponentVector& beta, std::size_t k, const Gamma& gamma);

/// Term-level comparison of det_{n+1}(|z|^{2 alpha_1} f) against the one-term
/// product formula lambda_0..lambda_n prod (mu_i+..+mu_j)^2 |z|^{2 (n+1) alpha_1}.
/// Uses the expansion engine with kDetPrune, so it is meant for radial cases.
struct ProductFormulaResult {
  bool single_term = false;
  bool exponent_match = false;
  double coeff_rel_error = 0.0;
  complex coeff;
  complex expected;
};
ProductFormulaResult product_formula_check(const TodaSolution& sol);

/// det(d_z^p z^{beta_{i_q}}) over rows p = 0..k and the chosen exponents, compared
/// with prod_{p<q} (beta_{i_q} - beta_{i_p}) z^{sum beta - k(k+1)/2}.
/// Returns the max relative coefficient deviation (1 if the shape differs).
double vandermonde_check(const ExponentData& data, const std::vector<std::size_t>& indices);

/// lim_{z -> 0} |z|^{2 alpha_k} 2^{k(k-1)} D_k =
/// 2^{k(k-1)} det(M_{0..k-1}) prod_{p<q<k} (beta_q - beta_p)^2.
double origin_constant(const TodaSolution& sol, std::size_t k);

}  // namespace toda
