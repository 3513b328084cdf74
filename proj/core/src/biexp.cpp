#include "toda/biexp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace toda {

namespace {

bool key_less(const BiExpTerm& a, const BiExpTerm& b) {
  if (auto c = a.zexp <=> b.zexp; c != 0) return c < 0;
  return (a.zbarexp <=> b.zbarexp) < 0;
}

bool same_key(const BiExpTerm& a, const BiExpTerm& b) { return a.zexp == b.zexp && a.zbarexp == b.zbarexp; }

std::vector<BiExpTerm> merge_terms(std::vector<BiExpTerm> terms) {
  std::sort(terms.begin(), terms.end(), key_less);
  std::vector<BiExpTerm> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && same_key(out.back(), t)) {
      out.back().coeff += t.coeff;
      out.back().weight += t.weight;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const BiExpTerm& t) { return t.coeff == complex(0.0, 0.0); });
  return out;
}

void check_dim(const BiExpPoly& p, const BiExpPoly& q) {
  if (p.dim() != q.dim()) {
    throw DimensionMismatch("BiExpPoly: dimension mismatch (" + std::to_string(p.dim()) + " vs " +
                            std::to_string(q.dim()) + ")");
  }
}

}  // namespace

BiExpPoly::BiExpPoly(std::size_t n, std::vector<BiExpTerm> terms) : dim_(n) {
  for (auto& t : terms) {
    if (t.zexp.dim() != n || t.zbarexp.dim() != n) throw DimensionMismatch("BiExpPoly: term dimension mismatch");
    t.weight = std::max(t.weight, std::abs(t.coeff));
  }
  terms_ = merge_terms(std::move(terms));
}

BiExpPoly BiExpPoly::constant(std::size_t n, complex c) {
  return BiExpPoly(n, {BiExpTerm{c, ExponentVector(n), ExponentVector(n), std::abs(c)}});
}

BiExpPoly BiExpPoly::monomial(complex c, ExponentVector zexp, ExponentVector zbarexp) {
  const std::size_t n = zexp.dim();
  return BiExpPoly(n, {BiExpTerm{c, std::move(zexp), std::move(zbarexp), std::abs(c)}});
}

BiExpPoly BiExpPoly::holomorphic(complex c, ExponentVector e) {
  const std::size_t n = e.dim();
  return monomial(c, std::move(e), ExponentVector(n));
}

BiExpPoly BiExpPoly::conj() const {
  std::vector<BiExpTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({std::conj(t.coeff), t.zbarexp, t.zexp, t.weight});
  return BiExpPoly(dim_, std::move(out));
}

BiExpPoly BiExpPoly::shifted(const ExponentVector& a, const ExponentVector& b) const {
  BiExpPoly out(dim_);
  out.terms_ = terms_;
  for (auto& t : out.terms_) {
    t.zexp += a;
    t.zbarexp += b;
  }
  // A uniform shift preserves the ordering.
  return out;
}

BiExpPoly BiExpPoly::scaled(complex s) const {
  BiExpPoly out(dim_);
  if (s == complex(0.0, 0.0)) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) {
    t.coeff *= s;
    t.weight *= std::abs(s);
  }
  return out;
}

double BiExpPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
  return m;
}

BiExpPoly operator+(const BiExpPoly& p, const BiExpPoly& q) {
  check_dim(p, q);
  if (q.empty()) return p;
  if (p.empty()) return q;
  std::vector<BiExpTerm> all;
  all.reserve(p.size() + q.size());
  all.insert(all.end(), p.terms_.begin(), p.terms_.end());
  all.insert(all.end(), q.terms_.begin(), q.terms_.end());
  BiExpPoly out(p.dim_);
  out.terms_ = merge_terms(std::move(all));
  return out;
}

BiExpPoly operator-(const BiExpPoly& p, const BiExpPoly& q) { return p + (-q); }

BiExpPoly operator*(const BiExpPoly& p, const BiExpPoly& q) {
  check_dim(p, q);
  BiExpPoly out(p.dim_);
  if (p.empty() || q.empty()) return out;
  std::vector<BiExpTerm> all;
  all.reserve(p.size() * q.size());
  for (const auto& a : p.terms_) {
    for (const auto& b : q.terms_) {
      all.push_back({a.coeff * b.coeff, a.zexp + b.zexp, a.zbarexp + b.zbarexp, a.weight * b.weight});
    }
  }
  out.terms_ = merge_terms(std::move(all));
  return out;
}

bool operator==(const BiExpPoly& p, const BiExpPoly& q) {
  if (p.dim_ != q.dim_ || p.size() != q.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& a = p.terms_[i];
    const auto& b = q.terms_[i];
    if (a.coeff != b.coeff || a.zexp != b.zexp || a.zbarexp != b.zbarexp) return false;
  }
  return true;
}

BiExpPoly poly_add(const BiExpPoly& p, const BiExpPoly& q) { return p + q; }
BiExpPoly poly_mul(const BiExpPoly& p, const BiExpPoly& q) { return p * q; }

BiExpPoly differentiate(const BiExpPoly& p, Dir dir, const Gamma& gamma) {
  if (gamma.n() != p.dim()) throw DimensionMismatch("differentiate: gamma dimension mismatch");
  const ExponentVector one = ExponentVector::constant(p.dim(), 1);
  std::vector<BiExpTerm> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    const ExponentVector& e = dir == Dir::z ? t.zexp : t.zbarexp;
    if (e.is_zero()) continue;
    const double mult = gamma.evaluate(e);
    if (mult == 0.0) continue;
    BiExpTerm d{t.coeff * mult, t.zexp, t.zbarexp, t.weight * std::abs(mult)};
    (dir == Dir::z ? d.zexp : d.zbarexp) -= one;
    out.push_back(std::move(d));
  }
  return BiExpPoly(p.dim(), std::move(out));
}

BiExpPoly differentiate(const BiExpPoly& p, int dz, int dzbar, const Gamma& gamma) {
  BiExpPoly out = p;
  for (int i = 0; i < dz; ++i) out = differentiate(out, Dir::z, gamma);
  for (int i = 0; i < dzbar; ++i) out = differentiate(out, Dir::zbar, gamma);
  return out;
}

complex eval_point(const BiExpPoly& p, complex z, std::span<const double> gamma) {
  if (z == complex(0.0, 0.0)) throw std::domain_error("eval_point: z = 0 is excluded");
  const double lr = std::log(std::abs(z));
  const double th = std::arg(z);
  complex sum = 0.0;
  for (const auto& t : p.terms()) {
    const double a = t.zexp.evaluate(gamma);
    const double b = t.zbarexp.evaluate(gamma);
    sum += t.coeff * std::exp((a + b) * lr) * std::polar(1.0, th * (a - b));
  }
  return sum;
}

complex eval_point(const BiExpPoly& p, complex z, const Gamma& gamma) { return eval_point(p, z, gamma.values()); }

double eval_abs(const BiExpPoly& p, complex z, const Gamma& gamma) {
  if (z == complex(0.0, 0.0)) throw std::domain_error("eval_abs: z = 0 is excluded");
  const double lr = std::log(std::abs(z));
  double sum = 0.0;
  for (const auto& t : p.terms()) {
    sum += std::abs(t.coeff) * std::exp((gamma.evaluate(t.zexp) + gamma.evaluate(t.zbarexp)) * lr);
  }
  return sum;
}

BiExpPoly prune_cancelled(const BiExpPoly& p, double rel) {
  std::vector<BiExpTerm> kept;
  kept.reserve(p.size());
  for (const auto& t : p.terms()) {
    if (std::abs(t.coeff) > rel * t.weight) kept.push_back(t);
  }
  return BiExpPoly(p.dim(), std::move(kept));
}

BiExpPoly prune_relative(const BiExpPoly& p, double rel) {
  const double cut = rel * p.max_abs_coeff();
  std::vector<BiExpTerm> kept;
  kept.reserve(p.size());
  for (const auto& t : p.terms()) {
    if (std::abs(t.coeff) > cut) kept.push_back(t);
  }
  return BiExpPoly(p.dim(), std::move(kept));
}

double cancellation_ratio(const BiExpPoly& p) {
  double worst = 0.0;
  for (const auto& t : p.terms()) {
    if (t.weight > 0.0) worst = std::max(worst, std::abs(t.coeff) / t.weight);
  }
  return worst;
}

bool is_single_valued(const BiExpPoly& p, const Gamma& gamma) {
  for (const auto& t : p.terms()) {
    const ExponentVector diff = t.zexp - t.zbarexp;
    if (!gamma.is_integer(diff)) return false;
  }
  return true;
}

bool is_real_symmetric(const BiExpPoly& p, double rel_tol) {
  const double scale = std::max(p.max_abs_coeff(), 1e-300);
  const BiExpPoly c = p.conj();
  const BiExpPoly diff = p - c;
  return diff.max_abs_coeff() <= rel_tol * scale;
}

CompiledPoly::CompiledPoly(const BiExpPoly& p, const Gamma& gamma) {
  std::map<double, std::size_t> radial_ids;
  std::map<double, std::size_t> angular_ids;
  for (const auto& t : p.terms()) {
    const double a = gamma.evaluate(t.zexp);
    const double b = gamma.evaluate(t.zbarexp);
    const double s = a + b;
    const double d = a - b;
    auto [ri, rnew] = radial_ids.try_emplace(s, radial_.size());
    if (rnew) radial_.push_back(s);
    auto [ai, anew] = angular_ids.try_emplace(d, angular_.size());
    if (anew) angular_.push_back(d);
    coeff_.push_back(t.coeff);
    radial_idx_.push_back(ri->second);
    angular_idx_.push_back(ai->second);
  }
}

complex CompiledPoly::operator()(complex z) const {
  const Scaled s = eval_scaled(z);
  return s.mantissa * std::exp(s.log_scale);
}

CompiledPoly::Scaled CompiledPoly::eval_scaled(complex z) const {
  if (z == complex(0.0, 0.0)) throw std::domain_error("CompiledPoly: z = 0 is excluded");
  if (coeff_.empty()) return {0.0, 0.0};
  const double lr = std::log(std::abs(z));
  const double th = std::arg(z);
  double top = -std::numeric_limits<double>::infinity();
  for (double s : radial_) top = std::max(top, s * lr);
  thread_local std::vector<double> pw;
  thread_local std::vector<complex> ph;
  pw.resize(radial_.size());
  ph.resize(angular_.size());
  for (std::size_t i = 0; i < radial_.size(); ++i) pw[i] = std::exp(radial_[i] * lr - top);
  for (std::size_t i = 0; i < angular_.size(); ++i) {
    ph[i] = angular_[i] == 0.0 ? complex(1.0, 0.0) : std::polar(1.0, angular_[i] * th);
  }
  complex sum = 0.0;
  for (std::size_t i = 0; i < coeff_.size(); ++i) sum += coeff_[i] * pw[radial_idx_[i]] * ph[angular_idx_[i]];
  return {sum, top};
}

double CompiledPoly::abs_sum(complex z) const {
  const double lr = std::log(std::abs(z));
  double sum = 0.0;
  for (std::size_t i = 0; i < coeff_.size(); ++i) sum += std::abs(coeff_[i]) * std::exp(radial_[radial_idx_[i]] * lr);
  return sum;
}

}  // namespace toda
