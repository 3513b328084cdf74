#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "toda/exponent.hpp"

namespace toda {

using complex = std::complex<double>;

enum class Dir { z, zbar };

/// c * z^zexp * zbar^zbarexp.
///
/// `weight` bounds the magnitudes that were summed into `coeff` during
/// merging (|coeff| <= weight). A coefficient that is tiny relative to its
/// weight is the residue of an exact cancellation.
struct BiExpTerm {
  complex coeff;
  ExponentVector zexp;
  ExponentVector zbarexp;
  double weight = 0.0;
};

/// Finite sum of BiExpTerms, kept merged and sorted by (zexp, zbarexp).
class BiExpPoly {
 public:
  /// The zero polynomial over gamma-dimension n.
  explicit BiExpPoly(std::size_t n = 0) : dim_(n) {}
  /// Merges like terms and drops exact zeros.
  BiExpPoly(std::size_t n, std::vector<BiExpTerm> terms);

  static BiExpPoly constant(std::size_t n, complex c);
  static BiExpPoly monomial(complex c, ExponentVector zexp, ExponentVector zbarexp);
  /// c * z^e (holomorphic monomial).
  static BiExpPoly holomorphic(complex c, ExponentVector e);

  std::size_t dim() const { return dim_; }
  const std::vector<BiExpTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Complex conjugate: coeff -> conj(coeff), zexp <-> zbarexp.
  BiExpPoly conj() const;
  /// Multiplies by z^a zbar^b.
  BiExpPoly shifted(const ExponentVector& a, const ExponentVector& b) const;
  BiExpPoly scaled(complex s) const;
  /// Largest coefficient magnitude (0 for the zero polynomial).
  double max_abs_coeff() const;

  BiExpPoly operator-() const { return scaled(-1.0); }
  friend BiExpPoly operator+(const BiExpPoly& p, const BiExpPoly& q);
  friend BiExpPoly operator-(const BiExpPoly& p, const BiExpPoly& q);
  friend BiExpPoly operator*(const BiExpPoly& p, const BiExpPoly& q);
  friend BiExpPoly operator*(complex s, const BiExpPoly& p) { return p.scaled(s); }
  BiExpPoly& operator+=(const BiExpPoly& q) { return *this = *this + q; }
  BiExpPoly& operator*=(const BiExpPoly& q) { return *this = *this * q; }

  /// Exact equality of merged term sets (weights ignored).
  friend bool operator==(const BiExpPoly& p, const BiExpPoly& q);

 private:
  std::size_t dim_ = 0;
  std::vector<BiExpTerm> terms_;
};

BiExpPoly poly_add(const BiExpPoly& p, const BiExpPoly& q);
BiExpPoly poly_mul(const BiExpPoly& p, const BiExpPoly& q);

/// Termwise power rule; the exponent shift is exact, the multiplier a(gamma) numeric.
BiExpPoly differentiate(const BiExpPoly& p, Dir dir, const Gamma& gamma);
/// d^p/dz^p d^q/dzbar^q.
BiExpPoly differentiate(const BiExpPoly& p, int dz, int dzbar, const Gamma& gamma);

/// Principal-branch evaluation c |z|^{a+b} exp(i theta (a-b)); z must be nonzero.
complex eval_point(const BiExpPoly& p, complex z, const Gamma& gamma);
complex eval_point(const BiExpPoly& p, complex z, std::span<const double> gamma);
/// sum |c| |z|^{a+b}: the magnitude scale for relative residuals at z.
double eval_abs(const BiExpPoly& p, complex z, const Gamma& gamma);

/// Drops terms with |coeff| <= rel * weight (residues of exact cancellation).
BiExpPoly prune_cancelled(const BiExpPoly& p, double rel);
/// Drops terms with |coeff| <= rel * max|coeff|.
BiExpPoly prune_relative(const BiExpPoly& p, double rel);

/// max over terms of |coeff| / weight; 0 for the zero polynomial. A value at
/// float-noise level means the polynomial is an exact zero up to rounding.
double cancellation_ratio(const BiExpPoly& p);

/// Every term has zexp - zbarexp in Z under gamma.
bool is_single_valued(const BiExpPoly& p, const Gamma& gamma);
/// Term multiset closed under conjugate swap, coefficients matching to rel_tol.
bool is_real_symmetric(const BiExpPoly& p, double rel_tol = 1e-12);

/// Fast repeated evaluation of one polynomial at fixed gamma.
///
/// Terms are grouped by distinct radial power s = a+b and angular frequency
/// d = a-b so that each point costs one exp per distinct s and one sincos per
/// distinct d.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  CompiledPoly(const BiExpPoly& p, const Gamma& gamma);

  complex operator()(complex z) const;
  /// value = mantissa * exp(log_scale); never overflows for large |z|.
  struct Scaled {
    complex mantissa;
    double log_scale;
  };
  Scaled eval_scaled(complex z) const;
  double abs_sum(complex z) const;
  bool empty() const { return coeff_.empty(); }

 private:
  std::vector<double> radial_;
  std::vector<double> angular_;
  std::vector<complex> coeff_;
  std::vector<std::size_t> radial_idx_;
  std::vector<std::size_t> angular_idx_;
};

}  // namespace toda
