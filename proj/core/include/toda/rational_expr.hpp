#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "toda/biexp.hpp"

namespace toda {

/// A shared denominator factor with its first derivatives precomputed.
///
/// Atoms are the D_k of a solution. Keeping denominators as products of atom
/// powers lets the quotient rule raise one exponent at a time instead of
/// squaring the whole denominator.
struct Atom {
  BiExpPoly poly;
  BiExpPoly dz;
  BiExpPoly dzbar;
  std::uint64_t id = 0;
};
using AtomPtr = std::shared_ptr<const Atom>;

AtomPtr make_atom(BiExpPoly poly, const Gamma& gamma);

/// num / prod_k atom_k^{e_k}, e_k >= 1. No GCD: only term merging and
/// explicit atom-power cancellation.
class RationalExpr {
 public:
  struct Factor {
    AtomPtr atom;
    int power = 0;
  };

  explicit RationalExpr(std::size_t n = 0) : num_(n) {}
  explicit RationalExpr(BiExpPoly num) : num_(std::move(num)) {}
  RationalExpr(BiExpPoly num, std::vector<Factor> den);

  /// atom^e for any integer e.
  static RationalExpr atom_power(const AtomPtr& atom, int e);

  std::size_t dim() const { return num_.dim(); }
  const BiExpPoly& num() const { return num_; }
  const std::vector<Factor>& den_factors() const { return den_; }
  /// The denominator as an expanded polynomial (1 when there are no factors).
  BiExpPoly den() const;
  bool is_zero() const { return num_.empty(); }
  /// Total number of numerator terms; a size diagnostic.
  std::size_t size() const { return num_.size(); }

  /// Multiplies by atom^e, cancelling against the denominator first.
  RationalExpr times_atom(const AtomPtr& atom, int e) const;
  RationalExpr times_poly(const BiExpPoly& p) const;
  RationalExpr scaled(complex s) const;

  RationalExpr operator-() const { return scaled(-1.0); }
  friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);

 private:
  BiExpPoly num_;
  std::vector<Factor> den_;  // sorted by atom id, powers >= 1
};

/// Quotient rule, one atom exponent raised per differentiated factor.
RationalExpr rational_diff(const RationalExpr& r, Dir dir, const Gamma& gamma);

complex eval_point(const RationalExpr& r, complex z, const Gamma& gamma);

/// Repeated evaluation of one RationalExpr at fixed gamma, overflow-safe.
class CompiledRational {
 public:
  CompiledRational() = default;
  CompiledRational(const RationalExpr& r, const Gamma& gamma);
  complex operator()(complex z) const;
  /// sum |numerator terms| / |numerator| at z; 1 for an exact zero.
  double condition(complex z) const;

 private:
  CompiledPoly num_;
  std::vector<std::pair<CompiledPoly, int>> den_;
};

}  // namespace toda
