#include <doctest.h>

#include <numbers>
#include <random>

#include "support.hpp"

using namespace toda;
using testing::gammas;

namespace {

std::string violated(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const InvalidInput& e) {
    return e.invariant();
  }
  return "";
}

}  // namespace

TEST_CASE("Cartan matrix inverse: product identity and closed form") {
  for (std::size_t n = 1; n <= kMaxRank; ++n) {
    const CartanData c = build_cartan(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational sum = 0;
        for (std::size_t k = 0; k < n; ++k) sum += Rational(c.A[i][k]) * c.Ainv[k][j];
        CHECK(sum == Rational(i == j ? 1 : 0));
        const std::int64_t a = std::int64_t(std::min(i, j) + 1), b = std::int64_t(std::max(i, j) + 1);
        CHECK(c.Ainv[i][j] == Rational(a * (std::int64_t(n) + 1 - b), std::int64_t(n) + 1));
      }
    }
  }
  CHECK_THROWS_AS(build_cartan(0), InvalidInput);
  CHECK_THROWS_AS(build_cartan(kMaxRank + 1), InvalidInput);
}

TEST_CASE("exponent bookkeeping: mu, alpha, beta relations") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto g = testing::random_gamma_vector(rng, n);
    const auto d = exponent_data(n, g);
    for (std::size_t i = 1; i <= n; ++i) {
      CHECK(*d.gamma.exact_evaluate(d.mu[i - 1]) == Rational(1) + g[i - 1]);
      Rational alpha = 0;
      for (std::size_t j = 1; j <= n; ++j) alpha += d.cartan.Ainv[i - 1][j - 1] * g[j - 1];
      CHECK(*d.gamma.exact_evaluate(d.alpha[i - 1]) == alpha);
      CHECK(*d.gamma.exact_evaluate(d.beta[i] - d.beta[i - 1]) == Rational(1) + g[i - 1]);
    }
    CHECK(*d.gamma.exact_evaluate(d.beta[0]) == -*d.gamma.exact_evaluate(d.alpha[0]));
    CHECK(*d.gamma.exact_evaluate(d.beta[n]) ==
          *d.gamma.exact_evaluate(d.alpha[n - 1]) + Rational(std::int64_t(n)));
  }
  CHECK(violated([] { exponent_data(2, gammas({Rational(-1), Rational(0)})); }) == invariant_name::kGamma);
  CHECK(violated([] { exponent_data(2, gammas({Rational(0)})); }) == invariant_name::kRank);
}

TEST_CASE("mass targets: Cartan-row combination and exact form") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto g = testing::random_gamma_vector(rng, n);
    const auto d = exponent_data(n, g);
    const MassTargets t = mass_targets(d);
    for (std::size_t i = 1; i <= n; ++i) {
      double row = 0.0;
      for (std::size_t j = 1; j <= n; ++j) row += d.cartan.A[i - 1][j - 1] * t.mass[j - 1];
      const double target = 4 * std::numbers::pi * (2.0 + g[i - 1].to_double() + g[n - i].to_double());
      CHECK(row == doctest::Approx(target).epsilon(1e-13));
      CHECK(t.cartan_row[i - 1] == doctest::Approx(target).epsilon(1e-13));
      CHECK(t.mass[i - 1] == doctest::Approx(4 * std::numbers::pi * mass_target_over_4pi(d, i).to_double()));
    }
  }
  const auto d0 = exponent_data(2, gammas({Rational(0), Rational(0)}));
  CHECK(mass_target_over_4pi(d0, 1) == Rational(2));
  CHECK(mass_target_over_4pi(d0, 2) == Rational(2));
  CHECK(mass_target_over_4pi(exponent_data(1, gammas({Rational(1, 2)})), 1) == Rational(3, 2));
}

TEST_CASE("admissible support and dimension: the four SU(3) cases") {
  auto dim = [](Rational a, Rational b) { return dimension(exponent_data(2, gammas({a, b}))); };
  CHECK(dim(0, 0) == 8);
  CHECK(dim(1, 2) == 8);
  CHECK(dim(Rational(1, 3), Rational(1, 2)) == 2);
  CHECK(dim(0, Rational(1, 2)) == 4);
  CHECK(dim(Rational(1, 2), 0) == 4);
  CHECK(dim(Rational(1, 3), Rational(2, 3)) == 4);
  for (std::size_t n = 1; n <= kMaxRank; ++n) {
    CHECK(dimension(exponent_data(n, std::vector<Rational>(n, Rational(0)))) == n * (n + 2));
  }
  CHECK(dimension(exponent_data(1, gammas({Rational(1, 2)}))) == 1);
  const auto support = admissible_support(exponent_data(2, gammas({Rational(1, 3), Rational(2, 3)})));
  REQUIRE(support.size() == 1);
  CHECK(support[0] == CIndex{2, 0});
  CHECK(dimension(exponent_data_generic(2, {0.1, 0.2})) == 2);
}

TEST_CASE("lambda product target from mu partial sums") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto g = testing::random_gamma_vector(rng, n);
    double expected = std::pow(2.0, -double(n * (n + 1)));
    for (std::size_t i = 1; i <= n; ++i) {
      double s = 0.0;
      for (std::size_t j = i; j <= n; ++j) {
        s += 1.0 + g[j - 1].to_double();
        expected /= s * s;
      }
    }
    CHECK(lambda_product_target(exponent_data(n, g)) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("make_params validation names the violated invariant") {
  const auto d = exponent_data(2, gammas({Rational(1, 3), Rational(1, 2)}));
  const double t = lambda_product_target(d);
  CHECK(violated([&] { make_params(d, {1.0, 1.0}, {}); }) == invariant_name::kLambdaCount);
  CHECK(violated([&] { make_params(d, {1.0, -1.0, std::nullopt}, {}); }) == invariant_name::kLambdaPositive);
  CHECK(violated([&] { make_params(d, {1.0, 1.0, 1.0}, {}); }) == invariant_name::kLambdaProduct);
  CHECK(violated([&] { make_params(d, {1.0, std::nullopt, std::nullopt}, {}); }) == invariant_name::kLambdaAuto);
  CHECK(violated([&] { make_params(d, {1.0, 1.0, std::nullopt}, {{{0, 1}, 1.0}}); }) == invariant_name::kCIndex);
  CHECK(violated([&] { make_params(d, {1.0, 1.0, std::nullopt}, {{{3, 0}, 1.0}}); }) == invariant_name::kCIndex);
  CHECK(violated([&] { make_params(d, {1.0, 1.0, std::nullopt}, {{{2, 0}, 1.0}}); }) == invariant_name::kCVanishing);
  CHECK(violated([&] { make_params(d, {1.0, 1.0, t}, {}); }).empty());
  CHECK(violated([&] { make_params(d, {1.0, 1.0, 2.0 * t}, {}, false); }).empty());

  const TodaParams p = make_params(d, {2.0, std::nullopt, 0.5}, {});
  REQUIRE(p.auto_slot);
  CHECK(*p.auto_slot == 1);
  CHECK(p.lambda[0] * p.lambda[1] * p.lambda[2] == doctest::Approx(t).epsilon(1e-14));
  const auto d0 = exponent_data(2, gammas({Rational(0), Rational(0)}));
  const TodaParams q = make_params(d0, {1.0, 1.0, std::nullopt}, {{{1, 0}, 0.0}, {{2, 1}, complex(0.5, 1.0)}});
  CHECK(q.c.size() == 1);
  CHECK(q.c_at(2, 1) == complex(0.5, 1.0));
  CHECK(q.c_at(1, 0) == complex(0.0, 0.0));
}

TEST_CASE("canonical params: equal lambda on target, no c") {
  for (std::size_t n = 1; n <= kMaxRank; ++n) {
    const auto d = exponent_data(n, std::vector<Rational>(n, Rational(1, 2)));
    const TodaParams p = canonical_params(d);
    double prod = 1.0;
    for (double l : p.lambda) {
      CHECK(l == doctest::Approx(p.lambda[0]));
      prod *= l;
    }
    CHECK(prod == doctest::Approx(lambda_product_target(d)).epsilon(1e-13));
    CHECK(p.c.empty());
  }
}
