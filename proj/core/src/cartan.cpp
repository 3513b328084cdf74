#include "toda/cartan.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

#include "toda/errors.hpp"

namespace toda {

CartanData build_cartan(std::size_t n) {
  if (n < 1 || n > kMaxRank) {
    throw InvalidInput(invariant_name::kRank, "build_cartan: n = " + std::to_string(n) + " outside supported range 1.." +
                            std::to_string(kMaxRank));
  }
  CartanData c;
  c.n = n;
  c.A.assign(n, std::vector<int>(n, 0));
  c.Ainv.assign(n, std::vector<Rational>(n));
  const auto N = static_cast<std::int64_t>(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.A[i][i] = 2;
    if (i + 1 < n) c.A[i][i + 1] = c.A[i + 1][i] = -1;
    for (std::size_t j = 0; j <= i; ++j) {
      const auto I = static_cast<std::int64_t>(i + 1);
      const auto J = static_cast<std::int64_t>(j + 1);
      c.Ainv[i][j] = c.Ainv[j][i] = Rational(J * (N + 1 - I), N + 1);
    }
  }
  return c;
}

ExponentVector ExponentData::mu_sum(std::size_t j, std::size_t i) const {
  ExponentVector s(n());
  for (std::size_t k = j + 1; k <= i; ++k) s += mu[k - 1];
  return gamma.canonical(s);
}

namespace {

ExponentData assemble(std::size_t n, Gamma gamma) {
  ExponentData d;
  d.cartan = build_cartan(n);
  d.gamma = std::move(gamma);
  for (std::size_t i = 1; i <= n; ++i) {
    d.mu.push_back(d.gamma.canonical(ExponentVector::constant(n, 1) + ExponentVector::gamma(n, i)));
    ExponentVector a(n);
    for (std::size_t j = 1; j <= n; ++j) a += d.cartan.Ainv[i - 1][j - 1] * ExponentVector::gamma(n, j);
    d.alpha.push_back(d.gamma.canonical(a));
  }
  d.beta.push_back(-d.alpha[0]);
  for (std::size_t i = 1; i <= n; ++i) d.beta.push_back(d.gamma.canonical(d.beta[i - 1] + d.mu[i - 1]));
  return d;
}

}  // namespace

ExponentData exponent_data(std::size_t n, const std::vector<Rational>& gamma) {
  if (n < 1 || n > kMaxRank) {
    throw InvalidInput(invariant_name::kRank, "exponent_data: n = " + std::to_string(n) + " outside supported range");
  }
  if (gamma.size() != n) throw InvalidInput(invariant_name::kRank, "exponent_data: expected " + std::to_string(n) + " gamma values");
  for (std::size_t i = 0; i < n; ++i) {
    if (gamma[i] <= Rational(-1)) {
      throw InvalidInput(invariant_name::kGamma, "exponent_data: gamma_" + std::to_string(i + 1) + " = " + gamma[i].to_string() +
                                  " must exceed -1");
    }
  }
  return assemble(n, Gamma::exact(gamma));
}

ExponentData exponent_data_generic(std::size_t n, const std::vector<double>& gamma) {
  if (n < 1 || n > kMaxRank) {
    throw InvalidInput(invariant_name::kRank, "exponent_data: n = " + std::to_string(n) + " outside supported range");
  }
  if (gamma.size() != n) throw InvalidInput(invariant_name::kRank, "exponent_data: expected " + std::to_string(n) + " gamma values");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(gamma[i] > -1.0)) {
      throw InvalidInput(invariant_name::kGamma, "exponent_data: gamma_" + std::to_string(i + 1) + " must exceed -1");
    }
  }
  return assemble(n, Gamma::generic(gamma));
}

MassTargets mass_targets(const ExponentData& data) {
  const std::size_t n = data.n();
  const double four_pi = 4.0 * std::numbers::pi;
  MassTargets t;
  for (std::size_t i = 1; i <= n; ++i) {
    const double k = static_cast<double>(i * (n + 1 - i));
    t.mass.push_back(four_pi * (data.alpha_value(i) + data.alpha_value(n + 1 - i) + k));
    t.cartan_row.push_back(four_pi * (2.0 + data.gamma.value(i) + data.gamma.value(n + 1 - i)));
  }
  return t;
}

Rational mass_target_over_4pi(const ExponentData& data, std::size_t i) {
  const std::size_t n = data.n();
  const auto ai = data.gamma.exact_evaluate(data.alpha[i - 1]);
  const auto aj = data.gamma.exact_evaluate(data.alpha[n - i]);
  if (!ai || !aj) throw std::logic_error("mass_target_over_4pi: requires exact gamma");
  return *ai + *aj + Rational(static_cast<std::int64_t>(i * (n + 1 - i)));
}

}  // namespace toda
