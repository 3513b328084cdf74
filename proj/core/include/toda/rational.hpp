#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace toda {

__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

/// Exact rational number.
///
/// Values that fit in a pair of 64-bit integers are stored inline; anything
/// larger is promoted to a boost::multiprecision::cpp_rational and demoted
/// again as soon as it fits. The representation is always normalized
/// (gcd(num, den) = 1, den > 0), so equality is field equality.
class Rational {
 public:
  using Big = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const Big& value);

  /// Parses "p", "p/q", or a finite decimal literal such as "-0.25".
  static Rational parse(std::string_view text);

  bool is_big() const { return big_ != nullptr; }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const;
  int sign() const;

  /// Numerator/denominator; only valid when !is_big().
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Big to_big() const;
  double to_double() const;
  std::string to_string() const;

  /// floor(value); throws std::overflow_error if it does not fit.
  std::int64_t floor() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_i128(i128 num, i128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const Big> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);

}  // namespace toda
