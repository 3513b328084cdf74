#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "toda/rational.hpp"

namespace toda {

/// Exact exponent q_0 + q_1*gamma_1 + ... + q_n*gamma_n.
///
/// Coefficient 0 multiplies the constant 1; coefficient k multiplies gamma_k.
/// All arithmetic is exact. Vectors of different dimension never mix.
class ExponentVector {
 public:
  using Storage = boost::container::small_vector<Rational, 5>;

  ExponentVector() = default;
  /// The zero exponent over {1, gamma_1..gamma_n}.
  explicit ExponentVector(std::size_t n) : coeffs_(n + 1) {}
  explicit ExponentVector(Storage coeffs);

  static ExponentVector constant(std::size_t n, Rational value);
  /// The exponent gamma_k (1-based).
  static ExponentVector gamma(std::size_t n, std::size_t k);

  std::size_t dim() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  const Storage& coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// True when every gamma coefficient vanishes.
  bool is_pure_constant() const;

  /// Numeric value for the given gamma values (size n).
  double evaluate(std::span<const double> gamma) const;

  ExponentVector operator-() const;
  friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);
  friend ExponentVector operator-(const ExponentVector& a, const ExponentVector& b);
  friend ExponentVector operator*(const Rational& s, const ExponentVector& a);
  ExponentVector& operator+=(const ExponentVector& o);
  ExponentVector& operator-=(const ExponentVector& o);

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  friend std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b);

  std::string to_string() const;

 private:
  Storage coeffs_;
};

/// Thrown when objects built over different gamma dimensions are combined.
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A working assignment of the singularity strengths gamma_1..gamma_n.
///
/// Exact mode stores rationals and collapses every exponent to a pure
/// rational (so z^{1+gamma_1} and z^1 merge when gamma_1 = 0). Generic mode
/// keeps exponents symbolic over {1, gamma_k}; gamma values are then only
/// known numerically and every partial sum of mu is treated as non-integer.
class Gamma {
 public:
  static Gamma exact(std::vector<Rational> values);
  static Gamma generic(std::vector<double> values);

  std::size_t n() const { return values_.size(); }
  bool is_exact() const { return exact_.has_value(); }
  std::span<const double> values() const { return values_; }
  double value(std::size_t k) const { return values_[k - 1]; }
  /// Exact gamma_k (1-based); requires is_exact().
  const Rational& exact_value(std::size_t k) const;
  const std::vector<Rational>& exact_values() const;

  /// Canonical form of an exponent under this assignment.
  ExponentVector canonical(const ExponentVector& e) const;
  double evaluate(const ExponentVector& e) const { return e.evaluate(values_); }
  /// Exact value when is_exact(), nullopt otherwise.
  std::optional<Rational> exact_evaluate(const ExponentVector& e) const;
  /// Exact membership of e in the positive integers; always false in generic mode.
  bool is_positive_integer(const ExponentVector& e) const;
  /// Whether e evaluates to an integer; exact mode decides exactly, generic mode
  /// decides symbolically (all gamma coefficients zero and integer constant).
  bool is_integer(const ExponentVector& e) const;

 private:
  std::vector<double> values_;
  std::optional<std::vector<Rational>> exact_;
};

}  // namespace toda
