#pragma once

#include <array>

#include "toda/params.hpp"
#include "toda/quadrature.hpp"

namespace toda {

/// Which of mu_1, mu_2, mu_1 + mu_2 are positive integers.
enum class Su3Case { all_integer, none, gamma1_integer, gamma2_integer, sum_integer };

Su3Case su3_case(const Rational& gamma1, const Rational& gamma2);
const char* to_string(Su3Case c);

struct Su3Params {
  Rational gamma1, gamma2;
  double xi1 = 1.0;
  double xi2 = 1.0;
  complex c1, c2, c3;
};

/// The SU(3) family written through P, Q and
/// Gamma = (gamma_1 + 1)(gamma_2 + 1)(gamma_1 + gamma_2 + 2):
///   e^{u_1} = 4 Gamma |z|^{2 gamma_1} Q / P^2,  e^{u_2} = 4 Gamma |z|^{2 gamma_2} P / Q^2.
/// Everything is evaluated in log form so that far radii do not overflow.
class Su3Oracle {
 public:
  /// Throws InvalidInput for xi <= 0, gamma <= -1 or a c that must vanish.
  explicit Su3Oracle(Su3Params p);

  const Su3Params& params() const { return p_; }
  double big_gamma() const { return big_gamma_; }

  std::array<double, 2> log_eu(complex z) const;
  std::array<double, 2> eu(complex z) const;

  /// int e^{u_i} dA, i = 1, 2.
  PlaneQuadrature mass(int i, double tol) const;

  /// The same solution in the (lambda, c) chart of build_solution.
  TodaParams to_params() const;

 private:
  double log_P(double lr, double theta) const;
  double log_Q(double lr, double theta) const;

  Su3Params p_;
  double g1_, g2_, big_gamma_;
};

/// Inverse of Su3Oracle::to_params for n = 2 exact gamma; throws InvalidInput otherwise.
Su3Params su3_from_params(const TodaParams& params);

}  // namespace toda
