#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "toda/params.hpp"
#include "toda/su3_oracle.hpp"

namespace toda::testing {

inline std::vector<Rational> gammas(std::initializer_list<Rational> g) { return std::vector<Rational>(g); }

/// p/q with q in {1..5} and value in (-1, 2].
inline Rational random_gamma(std::mt19937_64& rng, bool integer) {
  if (integer) return Rational(std::uniform_int_distribution<int>(0, 2)(rng));
  const int q = std::uniform_int_distribution<int>(2, 5)(rng);
  while (true) {
    const int p = std::uniform_int_distribution<int>(-q + 1, 2 * q)(rng);
    Rational g(p, q);
    if (!g.is_integer()) return g;
  }
}

/// Random n = 2 gamma in the given resonance case.
inline std::vector<Rational> random_su3_gamma(std::mt19937_64& rng, Su3Case wanted) {
  while (true) {
    const bool a = wanted == Su3Case::all_integer || wanted == Su3Case::gamma1_integer;
    const bool b = wanted == Su3Case::all_integer || wanted == Su3Case::gamma2_integer;
    std::vector<Rational> g{random_gamma(rng, a), random_gamma(rng, b)};
    if (su3_case(g[0], g[1]) == wanted) return g;
  }
}

/// log lambda within 0.3 of the canonical equal-lambda point, the last slot
/// solved from the product constraint, c uniform in the unit square on the
/// admissible support.
inline TodaParams random_params(std::mt19937_64& rng, ExponentData data) {
  const TodaParams canon = canonical_params(data);
  std::uniform_real_distribution<double> jitter(-0.3, 0.3), unit(-1.0, 1.0);
  const std::size_t n = data.n();
  std::vector<std::optional<double>> lambda(n + 1);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = canon.lambda[i] * std::exp(jitter(rng));
  std::map<CIndex, complex> c;
  for (const auto& key : admissible_support(data)) c[key] = complex(unit(rng), unit(rng));
  return make_params(std::move(data), lambda, c);
}

inline std::vector<Rational> random_gamma_vector(std::mt19937_64& rng, std::size_t n) {
  std::vector<Rational> g;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < n; ++i) g.push_back(random_gamma(rng, coin(rng)));
  return g;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace toda::testing
