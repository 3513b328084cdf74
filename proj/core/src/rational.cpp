#include "toda/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace toda {

namespace {

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();
constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();

bool fits64(i128 v) { return v > kMin64 && v <= kMax64; }

Rational::Big to_big128(i128 v) {
  const bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-(v + 1)) + 1u
                            : static_cast<u128>(v);
  boost::multiprecision::cpp_int out = static_cast<std::uint64_t>(u >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(u & ~std::uint64_t{0});
  return neg ? Rational::Big(-out) : Rational::Big(out);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  *this = from_i128(num, den);
}

Rational::Rational(const Big& value) {
  using boost::multiprecision::cpp_int;
  const cpp_int n = boost::multiprecision::numerator(value);
  const cpp_int d = boost::multiprecision::denominator(value);
  if (n > std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max() &&
      d <= std::numeric_limits<std::int64_t>::max()) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  } else {
    big_ = std::make_shared<const Big>(value);
  }
}

Rational Rational::from_i128(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  Rational out;
  if (fits64(num) && fits64(den)) {
    out.num_ = static_cast<std::int64_t>(num);
    out.den_ = static_cast<std::int64_t>(den);
  } else {
    out.big_ = std::make_shared<const Big>(to_big128(num) / to_big128(den));
  }
  return out;
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto parse_int = [&](std::string_view s) -> Big {
    s = trim(s);
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty integer in '" + std::string(text) + "'");
    std::string digits(s);
    if (digits.front() == '+') digits.erase(0, 1);
    const std::size_t start = (!digits.empty() && digits.front() == '-') ? 1 : 0;
    if (start == digits.size()) throw std::invalid_argument("Rational::parse: malformed '" + std::string(text) + "'");
    for (std::size_t i = start; i < digits.size(); ++i) {
      if (digits[i] < '0' || digits[i] > '9') {
        throw std::invalid_argument("Rational::parse: malformed '" + std::string(text) + "'");
      }
    }
    // cpp_int reads a leading 0 as an octal prefix.
    const std::size_t first = digits.find_first_not_of('0', start);
    digits.erase(start, (first == std::string::npos ? digits.size() - 1 : first) - start);
    return Big(boost::multiprecision::cpp_int(digits));
  };

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Big n = parse_int(text.substr(0, slash));
    const Big d = parse_int(text.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("Rational::parse: zero denominator in '" + std::string(text) + "'");
    return Rational(n / d);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    std::string joined = std::string(whole) + std::string(frac);
    if (joined.empty() || joined == "-" || joined == "+") {
      throw std::invalid_argument("Rational::parse: malformed '" + std::string(text) + "'");
    }
    Big value = parse_int(joined);
    Big scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    return Rational(value / scale);
  }
  return Rational(parse_int(text));
}

bool Rational::is_integer() const {
  if (big_) return boost::multiprecision::denominator(*big_) == 1;
  return den_ == 1;
}

int Rational::sign() const {
  if (big_) return big_->sign();
  return (num_ > 0) - (num_ < 0);
}

Rational::Big Rational::to_big() const {
  if (big_) return *big_;
  return Big(num_) / Big(den_);
}

double Rational::to_double() const {
  if (big_) return big_->convert_to<double>();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (big_) {
    std::string s = boost::multiprecision::numerator(*big_).str();
    if (boost::multiprecision::denominator(*big_) != 1) {
      s += "/" + boost::multiprecision::denominator(*big_).str();
    }
    return s;
  }
  std::string s = std::to_string(num_);
  if (den_ != 1) s += "/" + std::to_string(den_);
  return s;
}

std::int64_t Rational::floor() const {
  if (big_) {
    using boost::multiprecision::cpp_int;
    cpp_int n = boost::multiprecision::numerator(*big_);
    cpp_int d = boost::multiprecision::denominator(*big_);
    cpp_int q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    if (q < std::numeric_limits<std::int64_t>::min() || q > std::numeric_limits<std::int64_t>::max()) {
      throw std::overflow_error("Rational::floor: out of range");
    }
    return static_cast<std::int64_t>(q);
  }
  std::int64_t q = num_ / den_;
  if (num_ < 0 && q * den_ != num_) --q;
  return q;
}

Rational Rational::operator-() const {
  if (big_) return Rational(Big(-*big_));
  return from_i128(-static_cast<i128>(num_), den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return Rational(a.to_big() + b.to_big());
  if (a.den_ == 1 && b.den_ == 1) {
    return Rational::from_i128(static_cast<i128>(a.num_) + b.num_, 1);
  }
  return Rational::from_i128(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                             static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return Rational(a.to_big() - b.to_big());
  if (a.den_ == 1 && b.den_ == 1) {
    return Rational::from_i128(static_cast<i128>(a.num_) - b.num_, 1);
  }
  return Rational::from_i128(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                             static_cast<i128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return Rational(a.to_big() * b.to_big());
  return Rational::from_i128(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("Rational: division by zero");
  if (a.big_ || b.big_) return Rational(a.to_big() / b.to_big());
  return Rational::from_i128(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

bool operator==(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return a.to_big() == b.to_big();
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) {
    const auto x = a.to_big();
    const auto y = b.to_big();
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  const i128 lhs = static_cast<i128>(a.num_) * b.den_;
  const i128 rhs = static_cast<i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace toda
