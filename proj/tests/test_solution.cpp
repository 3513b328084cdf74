#include <doctest.h>

#include <random>

#include "support.hpp"
#include "toda/determinant.hpp"
#include "toda/grid.hpp"
#include "toda/solution.hpp"

using namespace toda;
using testing::gammas;

namespace {

double value_of(const CompiledPoly::Scaled& s) { return (s.mantissa * std::exp(s.log_scale)).real(); }

}  // namespace

TEST_CASE("top determinant is the constant 2^{-n(n+1)} for random admissible params") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 16; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto sol = build_solution(testing::random_params(rng, exponent_data(n, testing::random_gamma_vector(rng, n))));
    const BiExpPoly& top = sol.det(n + 1);
    const BiExpPoly pruned = prune_relative(top, 1e-12);
    REQUIRE(pruned.size() == 1);
    CHECK(pruned.terms()[0].zexp.is_zero());
    CHECK(pruned.terms()[0].zbarexp.is_zero());
    CHECK(testing::rel(pruned.terms()[0].coeff.real(), std::pow(2.0, -double(n * (n + 1)))) < 1e-10);
  }
}

TEST_CASE("n = 1 reproduces the Liouville closed form") {
  for (Rational g : {Rational(0), Rational(1, 2), Rational(-1, 3), Rational(2)}) {
    const auto p = make_params(exponent_data(1, gammas({g})), {0.7, std::nullopt}, {});
    const auto sol = build_solution(p);
    const double gd = g.to_double();
    for (complex z : {complex(0.1, 0.2), complex(1.0, -0.5), complex(-7.0, 3.0)}) {
      const double r = std::abs(z);
      const double expected = std::pow(r, 2 * gd) / std::pow(p.lambda[0] + p.lambda[1] * std::pow(r, 2 + 2 * gd), 2);
      CHECK(testing::rel(sol.fields(z).eu[0], expected) < 1e-12);
    }
  }
}

TEST_CASE("e^{u_i} = 4 D_{i-1} D_{i+1} / D_i^2 from the evaluator's own determinants") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 9; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const auto sol = build_solution(testing::random_params(rng, exponent_data(n, testing::random_gamma_vector(rng, n))));
    for (complex z : make_grid({0.05, 20.0, 3, 3})) {
      const PointFields f = sol.fields(z);
      CHECK(f.positive);
      for (std::size_t i = 1; i <= n; ++i) {
        const double dm = i == 1 ? 1.0 : value_of(sol.eval.D(i - 1, z));
        const double expected = 4.0 * dm * value_of(sol.eval.D(i + 1, z)) / std::pow(value_of(sol.eval.D(i, z)), 2);
        CHECK(testing::rel(f.eu[i - 1], expected) < 1e-9);
      }
    }
  }
}

TEST_CASE("builder determinants match the Laplace expansion of det_k(f)") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const auto sol = build_solution(testing::random_params(rng, exponent_data(n, testing::random_gamma_vector(rng, n))));
    const auto laplace = det_all(sol.f, n + 1, sol.gamma());
    for (std::size_t k = 1; k <= n + 1; ++k) {
      CAPTURE(k);
      CHECK(cancellation_ratio(sol.det(k) - laplace[k - 1]) < 1e-10);
    }
  }
}

TEST_CASE("determinant recursion holds and detects a corrupted determinant") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 1 + trial % 3;
    auto sol = build_solution(testing::random_params(rng, exponent_data(n, testing::random_gamma_vector(rng, n))));
    for (std::size_t k = 1; k <= n; ++k) CHECK(det_recursion_check(sol, k) < 1e-12);
    sol.D[0] = sol.D[0].scaled(1.0 + 1e-6);
    CHECK(det_recursion_check(sol, 1) > 1e-8);
  }
}

TEST_CASE("scaling identity holds for det_k and fails for a wrong power") {
  std::mt19937_64 rng(47);
  const auto p = testing::random_params(rng, exponent_data(2, gammas({Rational(1, 2), Rational(0)})));
  const auto sol = build_solution(p);
  const ExponentVector beta = p.data.alpha[0];
  for (std::size_t k = 1; k <= 3; ++k) {
    CHECK(scaling_identity_check(sol.f, beta, k, sol.gamma()) < 1e-12);
    const ExponentVector wrong = Rational(std::int64_t(k) + 1) * beta;
    const BiExpPoly diff = det_k(sol.f.shifted(beta, beta), k, sol.gamma()) - det_k(sol.f, k, sol.gamma()).shifted(wrong, wrong);
    CHECK(cancellation_ratio(diff) > 0.1);
  }
}

TEST_CASE("product formula is exact for radial cases") {
  for (auto g : {gammas({Rational(0), Rational(0)}), gammas({Rational(1, 3), Rational(1, 2)}),
                 gammas({Rational(1, 2), Rational(1, 4), Rational(-1, 3)})}) {
    const auto d = exponent_data(g.size(), g);
    std::vector<std::optional<double>> lambda(g.size() + 1, 0.5);
    lambda.back() = std::nullopt;
    const auto r = product_formula_check(build_solution(make_params(d, lambda, {})));
    CHECK(r.single_term);
    CHECK(r.exponent_match);
    CHECK(r.coeff_rel_error < 1e-10);
  }
}

TEST_CASE("Vandermonde identity for derivative determinants of monomials") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto d = exponent_data(n, testing::random_gamma_vector(rng, n));
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i <= n; ++i)
      if (i % 2 == 0 || i == n) idx.push_back(i);
    CHECK(vandermonde_check(d, idx) < 1e-12);
  }
}

TEST_CASE("origin constants match |z|^{2 alpha_k} 2^{k(k-1)} D_k near 0") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const auto sol = build_solution(testing::random_params(rng, exponent_data(n, testing::random_gamma_vector(rng, n))));
    const complex z = std::polar(1e-7, 0.3);
    for (std::size_t k = 1; k <= n; ++k) {
      const double c = origin_constant(sol, k);
      CHECK(c > 0.0);
      const double near = std::pow(1e-7, 2 * sol.params.data.alpha_value(k)) * std::pow(2.0, double(k * (k - 1))) *
                          value_of(sol.eval.D(k, z));
      CHECK(testing::rel(near, c) < 1e-4);
    }
  }
}

TEST_CASE("moment factorization round-trips through the chart") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto p = testing::random_params(rng, exponent_data(n, testing::random_gamma_vector(rng, n)));
    const auto sol = build_solution(p);
    CHECK((sol.B * sol.B.adjoint() - sol.M).norm() <= 1e-13 * sol.M.norm());
    const Eigen::MatrixXcd B = factor_moments(sol.M);
    CHECK((B - sol.B).norm() <= 1e-10 * sol.B.norm());
    const MomentChart chart = chart_from_factor(B);
    for (std::size_t i = 0; i <= n; ++i) CHECK(testing::rel(chart.lambda[i], p.lambda[i]) < 1e-10);
    for (const auto& [key, value] : chart.c) CHECK(std::abs(value - p.c_at(key.first, key.second)) < 1e-10);
  }
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(3, 3);
  bad(2, 2) = -1.0;
  CHECK_THROWS(factor_moments(bad));
}

TEST_CASE("a corrupted lambda product moves D_{n+1} by the same factor") {
  const auto d = exponent_data(2, gammas({Rational(0), Rational(0)}));
  const double t = lambda_product_target(d);
  for (double eps : {1e-8, 1e-4, 0.1}) {
    const auto p = make_params(d, {1.0, 1.0, t * (1.0 + eps)}, {}, false);
    const auto sol = build_solution(p);
    const double top = value_of(sol.eval.D(3, complex(0.4, 0.9)));
    CHECK(testing::rel(top / std::pow(2.0, -6.0), 1.0 + eps) < 1e-10);
  }
}
