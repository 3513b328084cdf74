#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "toda/biexp.hpp"
#include "toda/cartan.hpp"

namespace toda {

/// Suggested threshold for prune_cancelled on expanded determinants. Off by
/// default: nested minors can leave genuine coefficients this far below their
/// weight (observed at n = 4), so pruning is only safe for small cases.
inline constexpr double kDetPrune = 1e-12;

using PolyMatrix = std::vector<std::vector<BiExpPoly>>;

/// Determinant of a square matrix over the term algebra. Laplace expansion
/// along rows with memoized column-subset minors (2^k minors instead of k!
/// products). prune_rel <= 0 disables pruning.
BiExpPoly det_matrix(const PolyMatrix& m, double prune_rel = 0.0);

/// The matrix (d_z^p d_zbar^q f), 0 <= p, q < k.
PolyMatrix derivative_matrix(const BiExpPoly& f, std::size_t k, const Gamma& gamma);

/// det_k(f) for one k >= 1.
BiExpPoly det_k(const BiExpPoly& f, std::size_t k, const Gamma& gamma, double prune_rel = 0.0);

/// det_1(f) .. det_kmax(f), sharing minors.
std::vector<BiExpPoly> det_all(const BiExpPoly& f, std::size_t kmax, const Gamma& gamma,
                               double prune_rel = 0.0);

/// det_1 .. det_kmax of f = sum m_ij z^{beta_i} zbar^{beta_j} by Cauchy-Binet:
/// det_k = sum_{|I|=|J|=k} V(beta_I) V(beta_J) det(M_IJ) z^{e_I} zbar^{e_J},
/// V the Vandermonde product and e_I = sum beta_I - k(k-1)/2. No cancellation
/// between large terms, so coefficients keep full precision for every n.
std::vector<BiExpPoly> det_all_moments(const ExponentData& data, const Eigen::MatrixXcd& M, std::size_t kmax);

}  // namespace toda
