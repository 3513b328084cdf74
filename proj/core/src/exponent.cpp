#include "toda/exponent.hpp"

#include <sstream>
#include <stdexcept>

namespace toda {

namespace {

void check_dims(const ExponentVector& a, const ExponentVector& b) {
  if (a.coeffs().size() != b.coeffs().size()) {
    throw DimensionMismatch("ExponentVector: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()) + ")");
  }
}

}  // namespace

ExponentVector::ExponentVector(Storage coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("ExponentVector: need at least the constant coefficient");
}

ExponentVector ExponentVector::constant(std::size_t n, Rational value) {
  ExponentVector e(n);
  e.coeffs_[0] = std::move(value);
  return e;
}

ExponentVector ExponentVector::gamma(std::size_t n, std::size_t k) {
  if (k == 0 || k > n) throw std::out_of_range("ExponentVector::gamma: index out of range");
  ExponentVector e(n);
  e.coeffs_[k] = 1;
  return e;
}

bool ExponentVector::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool ExponentVector::is_pure_constant() const {
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    if (!coeffs_[k].is_zero()) return false;
  }
  return true;
}

double ExponentVector::evaluate(std::span<const double> gamma) const {
  if (gamma.size() + 1 != coeffs_.size()) throw DimensionMismatch("ExponentVector::evaluate: gamma size mismatch");
  double v = coeffs_[0].to_double();
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    if (!coeffs_[k].is_zero()) v += coeffs_[k].to_double() * gamma[k - 1];
  }
  return v;
}

ExponentVector ExponentVector::operator-() const {
  ExponentVector out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

ExponentVector& ExponentVector::operator+=(const ExponentVector& o) {
  check_dims(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!o.coeffs_[i].is_zero()) coeffs_[i] += o.coeffs_[i];
  }
  return *this;
}

ExponentVector& ExponentVector::operator-=(const ExponentVector& o) {
  check_dims(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!o.coeffs_[i].is_zero()) coeffs_[i] -= o.coeffs_[i];
  }
  return *this;
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector out = a;
  out += b;
  return out;
}

ExponentVector operator-(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector out = a;
  out -= b;
  return out;
}

ExponentVector operator*(const Rational& s, const ExponentVector& a) {
  ExponentVector out = a;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() <=> b.coeffs_.size();
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (auto c = a.coeffs_[i] <=> b.coeffs_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string ExponentVector::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << (coeffs_[i].sign() < 0 ? " - " : " + ");
    else if (coeffs_[i].sign() < 0) os << "-";
    first = false;
    const Rational mag = abs(coeffs_[i]);
    if (i == 0) {
      os << mag;
    } else {
      if (mag != Rational(1)) os << mag << "*";
      os << "g" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

Gamma Gamma::exact(std::vector<Rational> values) {
  Gamma g;
  g.values_.reserve(values.size());
  for (const auto& v : values) g.values_.push_back(v.to_double());
  g.exact_ = std::move(values);
  return g;
}

Gamma Gamma::generic(std::vector<double> values) {
  Gamma g;
  g.values_ = std::move(values);
  return g;
}

const Rational& Gamma::exact_value(std::size_t k) const {
  if (!exact_) throw std::logic_error("Gamma: exact value requested in generic mode");
  return exact_->at(k - 1);
}

const std::vector<Rational>& Gamma::exact_values() const {
  if (!exact_) throw std::logic_error("Gamma: exact values requested in generic mode");
  return *exact_;
}

std::optional<Rational> Gamma::exact_evaluate(const ExponentVector& e) const {
  if (e.dim() != n()) throw DimensionMismatch("Gamma::exact_evaluate: dimension mismatch");
  if (!exact_) {
    if (e.is_pure_constant()) return e[0];
    return std::nullopt;
  }
  Rational v = e[0];
  for (std::size_t k = 1; k <= n(); ++k) {
    if (!e[k].is_zero()) v += e[k] * (*exact_)[k - 1];
  }
  return v;
}

ExponentVector Gamma::canonical(const ExponentVector& e) const {
  if (!exact_) return e;
  return ExponentVector::constant(n(), *exact_evaluate(e));
}

bool Gamma::is_positive_integer(const ExponentVector& e) const {
  if (!exact_) return false;
  const Rational v = *exact_evaluate(e);
  return v.is_integer() && v.sign() > 0;
}

bool Gamma::is_integer(const ExponentVector& e) const {
  const auto v = exact_evaluate(e);
  return v && v->is_integer();
}

}  // namespace toda
