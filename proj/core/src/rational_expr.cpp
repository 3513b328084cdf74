#include "toda/rational_expr.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>

namespace toda {

namespace {

std::atomic<std::uint64_t> next_atom_id{1};

BiExpPoly power(const BiExpPoly& p, int e) {
  BiExpPoly out = BiExpPoly::constant(p.dim(), 1.0);
  for (int i = 0; i < e; ++i) out = out * p;
  return out;
}

}  // namespace

AtomPtr make_atom(BiExpPoly poly, const Gamma& gamma) {
  auto a = std::make_shared<Atom>();
  a->dz = differentiate(poly, Dir::z, gamma);
  a->dzbar = differentiate(poly, Dir::zbar, gamma);
  a->poly = std::move(poly);
  a->id = next_atom_id.fetch_add(1);
  return a;
}

RationalExpr::RationalExpr(BiExpPoly num, std::vector<Factor> den) : num_(std::move(num)) {
  std::map<std::uint64_t, Factor> merged;
  for (auto& f : den) {
    if (f.power < 0) throw std::invalid_argument("RationalExpr: negative denominator power");
    if (f.power == 0) continue;
    auto [it, fresh] = merged.try_emplace(f.atom->id, f);
    if (!fresh) it->second.power += f.power;
  }
  for (auto& [id, f] : merged) den_.push_back(f);
}

RationalExpr RationalExpr::atom_power(const AtomPtr& atom, int e) {
  return RationalExpr(BiExpPoly::constant(atom->poly.dim(), 1.0)).times_atom(atom, e);
}

BiExpPoly RationalExpr::den() const {
  BiExpPoly out = BiExpPoly::constant(num_.dim(), 1.0);
  for (const auto& f : den_) out = out * power(f.atom->poly, f.power);
  return out;
}

RationalExpr RationalExpr::times_atom(const AtomPtr& atom, int e) const {
  RationalExpr out = *this;
  if (e == 0 || out.num_.empty()) return out;
  auto it = std::find_if(out.den_.begin(), out.den_.end(), [&](const Factor& f) { return f.atom->id == atom->id; });
  if (e < 0) {
    if (it != out.den_.end()) {
      it->power -= e;
    } else {
      out.den_.push_back({atom, -e});
      std::sort(out.den_.begin(), out.den_.end(),
                [](const Factor& a, const Factor& b) { return a.atom->id < b.atom->id; });
    }
    return out;
  }
  int rest = e;
  if (it != out.den_.end()) {
    const int cancel = std::min(rest, it->power);
    it->power -= cancel;
    rest -= cancel;
    if (it->power == 0) out.den_.erase(it);
  }
  if (rest > 0) out.num_ = out.num_ * power(atom->poly, rest);
  return out;
}

RationalExpr RationalExpr::times_poly(const BiExpPoly& p) const {
  RationalExpr out = *this;
  out.num_ = out.num_ * p;
  return out;
}

RationalExpr RationalExpr::scaled(complex s) const {
  RationalExpr out = *this;
  out.num_ = out.num_.scaled(s);
  if (out.num_.empty()) out.den_.clear();
  return out;
}

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("RationalExpr: dimension mismatch");
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  // Common denominator: per-atom maximum power.
  std::map<std::uint64_t, RationalExpr::Factor> common;
  for (const auto& f : a.den_) common[f.atom->id] = f;
  for (const auto& f : b.den_) {
    auto [it, fresh] = common.try_emplace(f.atom->id, f);
    if (!fresh) it->second.power = std::max(it->second.power, f.power);
  }
  auto lift = [&](const RationalExpr& r) {
    BiExpPoly num = r.num_;
    for (const auto& [id, f] : common) {
      int have = 0;
      for (const auto& g : r.den_) {
        if (g.atom->id == id) have = g.power;
      }
      if (f.power > have) num = num * power(f.atom->poly, f.power - have);
    }
    return num;
  };
  RationalExpr out(a.dim());
  out.num_ = lift(a) + lift(b);
  if (out.num_.empty()) return out;
  for (const auto& [id, f] : common) out.den_.push_back(f);
  return out;
}

RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) { return a + (-b); }

RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("RationalExpr: dimension mismatch");
  if (a.is_zero() || b.is_zero()) return RationalExpr(a.dim());
  std::vector<RationalExpr::Factor> den = a.den_;
  den.insert(den.end(), b.den_.begin(), b.den_.end());
  return RationalExpr(a.num_ * b.num_, std::move(den));
}

RationalExpr rational_diff(const RationalExpr& r, Dir dir, const Gamma& gamma) {
  const std::size_t n = r.dim();
  if (r.is_zero()) return RationalExpr(n);
  const auto& den = r.den_factors();
  // d(N / prod D^e) = (N' prod D - N sum_k e_k D_k' prod_{l != k} D_l) / prod D^{e+1}
  BiExpPoly all = BiExpPoly::constant(n, 1.0);
  for (const auto& f : den) all = all * f.atom->poly;
  BiExpPoly num = differentiate(r.num(), dir, gamma) * all;
  for (std::size_t k = 0; k < den.size(); ++k) {
    BiExpPoly others = BiExpPoly::constant(n, 1.0);
    for (std::size_t l = 0; l < den.size(); ++l) {
      if (l != k) others = others * den[l].atom->poly;
    }
    const BiExpPoly& d = dir == Dir::z ? den[k].atom->dz : den[k].atom->dzbar;
    num = num - (r.num() * d * others).scaled(static_cast<double>(den[k].power));
  }
  std::vector<RationalExpr::Factor> out_den = den;
  for (auto& f : out_den) f.power += 1;
  return RationalExpr(num, std::move(out_den));
}

complex eval_point(const RationalExpr& r, complex z, const Gamma& gamma) {
  return CompiledRational(r, gamma)(z);
}

CompiledRational::CompiledRational(const RationalExpr& r, const Gamma& gamma) : num_(r.num(), gamma) {
  for (const auto& f : r.den_factors()) den_.emplace_back(CompiledPoly(f.atom->poly, gamma), f.power);
}

complex CompiledRational::operator()(complex z) const {
  if (num_.empty()) return 0.0;
  auto [m, s] = num_.eval_scaled(z);
  for (const auto& [p, e] : den_) {
    const auto d = p.eval_scaled(z);
    for (int i = 0; i < e; ++i) m /= d.mantissa;
    s -= e * d.log_scale;
  }
  return m * std::exp(s);
}

double CompiledRational::condition(complex z) const {
  if (num_.empty()) return 1.0;
  const auto v = num_.eval_scaled(z);
  const double mag = std::abs(v.mantissa);
  if (mag == 0.0) return std::numeric_limits<double>::infinity();
  return num_.abs_sum(z) * std::exp(-v.log_scale) / mag;
}

}  // namespace toda
