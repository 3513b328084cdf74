#pragma once

#include <cstddef>
#include <vector>

#include "toda/exponent.hpp"

namespace toda {

constexpr std::size_t kMaxRank = 4;

/// SU(n+1) Cartan matrix and its exact inverse.
struct CartanData {
  std::size_t n = 0;
  std::vector<std::vector<int>> A;
  std::vector<std::vector<Rational>> Ainv;
};

/// 1 <= n <= kMaxRank.
CartanData build_cartan(std::size_t n);

/// Exponent bookkeeping derived from gamma. Index conventions: mu, alpha and
/// gamma are 1-based in the math and 0-based here (mu[0] is mu_1); beta has
/// n+1 entries beta[0..n].
struct ExponentData {
  CartanData cartan;
  Gamma gamma;
  std::vector<ExponentVector> mu;
  std::vector<ExponentVector> alpha;
  std::vector<ExponentVector> beta;

  std::size_t n() const { return cartan.n; }
  double mu_value(std::size_t i) const { return gamma.evaluate(mu[i - 1]); }
  double alpha_value(std::size_t i) const { return gamma.evaluate(alpha[i - 1]); }
  double beta_value(std::size_t i) const { return gamma.evaluate(beta[i]); }
  /// mu_{j+1} + ... + mu_i (exponent of z in P_i relative to P_j).
  ExponentVector mu_sum(std::size_t j, std::size_t i) const;
};

/// Rejects n out of range and gamma_i <= -1.
ExponentData exponent_data(std::size_t n, const std::vector<Rational>& gamma);
/// Generic (irrational) gamma; every partial mu-sum is treated as non-integer.
ExponentData exponent_data_generic(std::size_t n, const std::vector<double>& gamma);

struct MassTargets {
  /// 4 pi [alpha_i + alpha_{n+1-i} + i(n+1-i)], i = 1..n.
  std::vector<double> mass;
  /// 4 pi (2 + gamma_i + gamma_{n+1-i}), the Cartan-row combination of mass.
  std::vector<double> cartan_row;
};

MassTargets mass_targets(const ExponentData& data);

/// Exact version of mass[i-1] / (4 pi); requires exact gamma.
Rational mass_target_over_4pi(const ExponentData& data, std::size_t i);

}  // namespace toda
