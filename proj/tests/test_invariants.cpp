#include <doctest.h>

#include <random>

#include "support.hpp"
#include "toda/grid.hpp"
#include "toda/invariants.hpp"

using namespace toda;
using testing::gammas;

namespace {

/// Coefficients of prod (x - beta_i) in the falling-factorial basis from
/// Newton forward differences at x = 0..n+1: c_k = Delta^k P(0) / k!.
std::vector<Rational> newton_coefficients(const ExponentData& d) {
  const std::size_t deg = d.n() + 1;
  std::vector<Rational> values;
  for (std::size_t x = 0; x <= deg; ++x) {
    Rational v = 1;
    for (std::size_t i = 0; i <= d.n(); ++i) v *= Rational(std::int64_t(x)) - *d.gamma.exact_evaluate(d.beta[i]);
    values.push_back(v);
  }
  std::vector<Rational> out;
  Rational factorial = 1;
  for (std::size_t k = 0; k <= deg; ++k) {
    if (k > 0) factorial *= Rational(std::int64_t(k));
    out.push_back(values[0] / factorial);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) values[i] = values[i + 1] - values[i];
    values.pop_back();
  }
  return out;
}

std::vector<complex> sample_points() { return make_grid({0.2, 5.0, 3, 3}); }

}  // namespace

TEST_CASE("indicial coefficients agree with forward differences") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto d = exponent_data(n, testing::random_gamma_vector(rng, n));
    const auto ic = indicial_coefficients(d);
    const auto newton = newton_coefficients(d);
    CHECK(ic.roots_exact);
    REQUIRE(ic.exact.size() == n);
    for (std::size_t k = 1; k <= n; ++k) {
      CHECK(ic.exact[k - 1] == newton[k - 1]);
      CHECK(ic.w[k - 1] == doctest::Approx(newton[k - 1].to_double()));
    }
    CHECK(newton[n] == Rational(0));
    CHECK(newton[n + 1] == Rational(1));
  }
}

TEST_CASE("indicial coefficients: worked values") {
  const auto ic = indicial_coefficients(exponent_data(2, gammas({Rational(1), Rational(0)})));
  CHECK(ic.exact[0] == Rational(56, 27));
  CHECK(ic.exact[1] == Rational(-4, 3));
  for (Rational g : {Rational(0), Rational(1, 2), Rational(2, 3)}) {
    const auto w = indicial_coefficients(exponent_data(1, gammas({g}))).exact;
    CHECK(w[0] == -(g * g / Rational(4) + g / Rational(2)));
  }
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& w : indicial_coefficients(exponent_data(n, std::vector<Rational>(n, Rational(0)))).exact) {
      CHECK(w == Rational(0));
    }
  }
}

TEST_CASE("Z_k z^{n+2-k} is the indicial constant: n = 1, 2 across resonance cases") {
  std::mt19937_64 rng(73);
  std::vector<std::vector<Rational>> cases{gammas({Rational(0)}), gammas({Rational(1, 2)}), gammas({Rational(2)})};
  for (auto c : {Su3Case::all_integer, Su3Case::none, Su3Case::gamma1_integer, Su3Case::gamma2_integer,
                 Su3Case::sum_integer}) {
    cases.push_back(testing::random_su3_gamma(rng, c));
  }
  cases.push_back(gammas({Rational(1), Rational(0)}));
  for (const auto& g : cases) {
    const auto sol = build_solution(testing::random_params(rng, exponent_data(g.size(), g)));
    const auto rep = invariant_report(sol, sample_points());
    CAPTURE(g[0]);
    CHECK(rep.pass);
    for (const auto& z : rep.z) {
      CHECK(z.rel_error < 1e-8);
      CHECK(std::abs(z.median.imag()) < 1e-8 * std::max(1.0, std::abs(z.indicial)));
    }
    CHECK(rep.antiholomorphy < 1e-8);
    CHECK(rep.ode_cancellation < 1e-9);
    CHECK(rep.definition_consistency < 1e-10);
  }
}

TEST_CASE("Z constants for n = 2, gamma = (1, 0) are 56/27 and -4/3") {
  std::mt19937_64 rng(79);
  const auto sol = build_solution(testing::random_params(rng, exponent_data(2, gammas({Rational(1), Rational(0)}))));
  const auto rep = invariant_report(sol, sample_points());
  REQUIRE(rep.z.size() == 2);
  CHECK(rep.z[0].median.real() == doctest::Approx(56.0 / 27.0).epsilon(1e-8));
  CHECK(rep.z[1].median.real() == doctest::Approx(-4.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("gamma = 0: every W_j^n vanishes pointwise") {
  std::mt19937_64 rng(83);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto sol = build_solution(testing::random_params(rng, exponent_data(n, std::vector<Rational>(n, 0))));
    const auto rep = invariant_report(sol, sample_points());
    CHECK(rep.gamma_zero);
    CHECK(rep.top_row_max < 1e-10);
    CHECK(rep.pass);
  }
}

TEST_CASE("n = 3 with gamma != 0 and nonzero c") {
  std::mt19937_64 rng(89);
  const auto sol =
      build_solution(testing::random_params(rng, exponent_data(3, gammas({Rational(1, 2), Rational(0), Rational(1)}))));
  REQUIRE(!sol.params.c.empty());
  const auto rep = invariant_report(sol, make_grid({0.3, 3.0, 2, 3}));
  CHECK(rep.pass);
  for (const auto& z : rep.z) CHECK(z.rel_error < 1e-8);
}

TEST_CASE("the ODE residual sees a perturbed f") {
  std::mt19937_64 rng(97);
  auto sol = build_solution(testing::random_params(rng, exponent_data(2, gammas({Rational(1, 3), Rational(1, 2)}))));
  CHECK(ode_residual(sol, sample_points()).cancellation < 1e-12);
  const std::size_t n = 2;
  sol.f = sol.f + BiExpPoly::monomial(1e-3, ExponentVector::constant(n, Rational(1, 7)),
                                      ExponentVector::constant(n, Rational(1, 7)));
  CHECK(ode_residual(sol, sample_points()).cancellation > 0.1);
}

TEST_CASE("the invariant recursion respects its term budget") {
  std::mt19937_64 rng(101);
  const auto sol = build_solution(testing::random_params(rng, exponent_data(3, std::vector<Rational>(3, 0))));
  CHECK_THROWS_AS(w_invariants(sol, 50), BudgetExceeded);
  InvariantTolerances tol;
  tol.term_budget = 50;
  CHECK_THROWS_AS(invariant_report(sol, sample_points(), tol), BudgetExceeded);
  CHECK_NOTHROW(w_invariants(sol));
}
