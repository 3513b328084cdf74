#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "support.hpp"
#include "toda/determinant.hpp"
#include "toda/rational_expr.hpp"
#include "toda/solution.hpp"

using namespace toda;
using testing::gammas;

namespace {

double falling(double a, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= a - i;
  return r;
}

/// d_z^p d_zbar^q of p at z, from the term list with its own power rule.
complex derivative_value(const BiExpPoly& poly, int p, int q, complex z, const Gamma& g) {
  const double r = std::abs(z), th = std::arg(z);
  complex sum = 0.0;
  for (const auto& t : poly.terms()) {
    const double a = g.evaluate(t.zexp), b = g.evaluate(t.zbarexp);
    const double c = falling(a, p) * falling(b, q);
    if (c == 0.0) continue;
    sum += t.coeff * c * std::pow(r, a + b - p - q) * std::polar(1.0, th * ((a - p) - (b - q)));
  }
  return sum;
}

/// Leibniz formula over all permutations.
complex permutation_det(const std::vector<std::vector<complex>>& m) {
  const std::size_t k = m.size();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  complex total = 0.0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) inversions += perm[i] > perm[j];
    complex prod = inversions % 2 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < k; ++i) prod *= m[i][perm[i]];
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

complex brute_det_k(const BiExpPoly& f, std::size_t k, complex z, const Gamma& g) {
  std::vector<std::vector<complex>> m(k, std::vector<complex>(k));
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = 0; q < k; ++q) m[p][q] = derivative_value(f, int(p), int(q), z, g);
  return permutation_det(m);
}

Eigen::MatrixXcd random_hermitian_pd(std::mt19937_64& rng, std::size_t size) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd a(size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) a(i, j) = complex(u(rng), u(rng));
  return a * a.adjoint() + Eigen::MatrixXcd::Identity(size, size);
}

/// (F(z + h) - F(z - h)) / 2h in x and y, combined into d_z or d_zbar.
template <class F>
complex numeric_dz(F f, complex z, Dir dir) {
  const double h = 1e-5 * std::abs(z);
  const complex fx = (f(z + h) - f(z - h)) / (2.0 * h);
  const complex fy = (f(z + complex(0, h)) - f(z - complex(0, h))) / (2.0 * h);
  return dir == Dir::z ? 0.5 * (fx - complex(0, 1) * fy) : 0.5 * (fx + complex(0, 1) * fy);
}

}  // namespace

TEST_CASE("rational arithmetic matches boost cpp_rational, including promotion") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> big(-(std::int64_t(1) << 62), std::int64_t(1) << 62);
  std::uniform_int_distribution<std::int64_t> small(1, 1000);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational a(big(rng), small(rng)), b(small(rng) * (trial % 2 ? 1 : -1), big(rng) | 1);
    const Rational::Big A = a.to_big(), B = b.to_big();
    CHECK((a + b).to_big() == A + B);
    CHECK((a - b).to_big() == A - B);
    CHECK((a * b).to_big() == A * B);
    CHECK((a / b).to_big() == A / B);
    CHECK(((a * b) / b) == a);
  }
  const Rational huge = Rational(std::int64_t(1) << 62) * Rational(std::int64_t(1) << 62);
  CHECK(huge.is_big());
  CHECK(!(huge / Rational(std::int64_t(1) << 62)).is_big());
}

TEST_CASE("rational parsing and normalization") {
  CHECK(Rational::parse("6/8") == Rational(3, 4));
  CHECK(Rational::parse("-0.25") == Rational(-1, 4));
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("010/08") == Rational(5, 4));
  CHECK(Rational::parse("0") == Rational(0));
  CHECK(Rational::parse("-0.05") == Rational(-1, 20));
  CHECK(Rational(2, -4).to_string() == "-1/2");
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("abc"));
  CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("exponent vectors: exact collapse versus generic symbols") {
  const std::size_t n = 2;
  const ExponentVector e = ExponentVector::constant(n, 1) + ExponentVector::gamma(n, 1);
  const Gamma exact = Gamma::exact({Rational(0), Rational(1, 2)});
  CHECK(exact.canonical(e) == ExponentVector::constant(n, 1));
  CHECK(exact.is_positive_integer(e));
  const Gamma generic = Gamma::generic({0.0, 0.5});
  CHECK(generic.canonical(e) == e);
  CHECK(!generic.is_positive_integer(e));
  CHECK(generic.evaluate(e) == doctest::Approx(1.0));
  CHECK_THROWS_AS(e + ExponentVector::gamma(3, 1), DimensionMismatch);
}

TEST_CASE("term algebra is a homomorphism to pointwise values") {
  std::mt19937_64 rng(11);
  const auto data = exponent_data(2, gammas({Rational(1, 3), Rational(1, 2)}));
  const BiExpPoly p = f_from_moments(data, random_hermitian_pd(rng, 3));
  const BiExpPoly q = f_from_moments(data, random_hermitian_pd(rng, 3)).shifted(data.beta[1], data.beta[0]);
  for (complex z : {complex(0.3, 0.4), complex(-2.0, 0.7), complex(1.5, -3.0)}) {
    const complex pz = eval_point(p, z, data.gamma), qz = eval_point(q, z, data.gamma);
    CHECK(std::abs(eval_point(p * q, z, data.gamma) - pz * qz) <= 1e-12 * std::abs(pz * qz));
    CHECK(std::abs(eval_point(p + q, z, data.gamma) - (pz + qz)) <= 1e-12 * (std::abs(pz) + std::abs(qz)));
    CHECK(std::abs(eval_point(p.conj(), z, data.gamma) - std::conj(pz)) <= 1e-12 * std::abs(pz));
    const CompiledPoly cp(p * q, data.gamma);
    CHECK(std::abs(cp(z) - pz * qz) <= 1e-12 * std::abs(pz * qz));
    const auto s = cp.eval_scaled(z);
    CHECK(std::abs(s.mantissa * std::exp(s.log_scale) - pz * qz) <= 1e-12 * std::abs(pz * qz));
  }
  CHECK(is_real_symmetric(p));
  // Off-diagonal moments between exponents with non-integer difference are multivalued.
  CHECK(!is_single_valued(p, data.gamma));
  CHECK(is_single_valued(build_f(canonical_params(data)), data.gamma));
  CHECK(!is_single_valued(BiExpPoly::holomorphic(1.0, data.beta[1]), data.gamma));
}

TEST_CASE("differentiation matches finite differences") {
  std::mt19937_64 rng(3);
  const auto data = exponent_data(2, gammas({Rational(1, 2), Rational(0)}));
  const BiExpPoly f = f_from_moments(data, random_hermitian_pd(rng, 3));
  for (complex z : {complex(0.8, 0.3), complex(-1.2, 1.1)}) {
    for (Dir dir : {Dir::z, Dir::zbar}) {
      const complex exact = eval_point(differentiate(f, dir, data.gamma), z, data.gamma);
      const complex fd = numeric_dz([&](complex w) { return eval_point(f, w, data.gamma); }, z, dir);
      CHECK(std::abs(exact - fd) <= 1e-7 * eval_abs(f, z, data.gamma));
    }
    const complex mixed = eval_point(differentiate(f, 2, 1, data.gamma), z, data.gamma);
    CHECK(std::abs(mixed - derivative_value(f, 2, 1, z, data.gamma)) <= 1e-12 * std::abs(mixed) + 1e-14);
  }
}

TEST_CASE("Laplace determinant engine matches a permutation-sum oracle") {
  std::mt19937_64 rng(5);
  for (auto g : {gammas({Rational(0), Rational(0)}), gammas({Rational(1, 3), Rational(-1, 2)}),
                 gammas({Rational(1), Rational(0)})}) {
    const auto data = exponent_data(2, g);
    const BiExpPoly f = f_from_moments(data, random_hermitian_pd(rng, 3));
    for (std::size_t k = 1; k <= 3; ++k) {
      const BiExpPoly d = det_k(f, k, data.gamma);
      for (complex z : {complex(0.5, 0.5), complex(-1.3, 0.2)}) {
        const complex brute = brute_det_k(f, k, z, data.gamma);
        CHECK(std::abs(eval_point(d, z, data.gamma) - brute) <= 1e-10 * eval_abs(d, z, data.gamma));
      }
    }
  }
}

TEST_CASE("Cauchy-Binet determinants agree with the Laplace engine term by term") {
  std::mt19937_64 rng(9);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto data = exponent_data(n, testing::random_gamma_vector(rng, n));
    const Eigen::MatrixXcd M = random_hermitian_pd(rng, n + 1);
    const auto cb = det_all_moments(data, M, n + 1);
    const auto laplace = det_all(f_from_moments(data, M), n + 1, data.gamma);
    for (std::size_t k = 0; k <= n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(cancellation_ratio(cb[k] - laplace[k]) < 1e-10);
    }
  }
}

TEST_CASE("a wrong determinant is detected at the term level") {
  std::mt19937_64 rng(13);
  const auto data = exponent_data(2, gammas({Rational(0), Rational(1, 2)}));
  const Eigen::MatrixXcd M = random_hermitian_pd(rng, 3);
  const auto cb = det_all_moments(data, M, 2);
  Eigen::MatrixXcd wrong = M;
  wrong(0, 0) *= 1.0 + 1e-6;
  const auto laplace = det_all(f_from_moments(data, wrong), 2, data.gamma);
  CHECK(cancellation_ratio(cb[1] - laplace[1]) > 1e-8);
}

TEST_CASE("rational expressions: quotient rule and compiled evaluation") {
  std::mt19937_64 rng(17);
  const auto data = exponent_data(2, gammas({Rational(1, 2), Rational(1, 3)}));
  const BiExpPoly f = f_from_moments(data, random_hermitian_pd(rng, 3));
  const AtomPtr atom = make_atom(f, data.gamma);
  const RationalExpr r = RationalExpr(differentiate(f, Dir::z, data.gamma)).times_atom(atom, -2);
  for (complex z : {complex(0.6, -0.2), complex(2.0, 1.0)}) {
    const complex value = eval_point(r, z, data.gamma);
    const complex direct = eval_point(differentiate(f, Dir::z, data.gamma), z, data.gamma) /
                           std::pow(eval_point(f, z, data.gamma), 2);
    CHECK(std::abs(value - direct) <= 1e-12 * std::abs(direct));
    CHECK(std::abs(CompiledRational(r, data.gamma)(z) - value) <= 1e-12 * std::abs(value));
    for (Dir dir : {Dir::z, Dir::zbar}) {
      const complex exact = eval_point(rational_diff(r, dir, data.gamma), z, data.gamma);
      const complex fd = numeric_dz([&](complex w) { return eval_point(r, w, data.gamma); }, z, dir);
      CHECK(std::abs(exact - fd) <= 1e-6 * std::abs(exact) + 1e-9);
    }
  }
  const RationalExpr one = RationalExpr(f).times_atom(atom, -1);
  CHECK(std::abs(eval_point(one, complex(0.7, 0.1), data.gamma) - 1.0) < 1e-13);
  CHECK(one.times_atom(atom, 1).den_factors().empty());
}
