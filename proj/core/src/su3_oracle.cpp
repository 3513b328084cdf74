#include "toda/su3_oracle.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace toda {

namespace {

struct Term {
  complex coeff;
  double power;  // z^power
};

/// log |sum_k c_k z^{a_k}| with z = e^{lr + i theta}, scaled by the largest term.
double log_abs(const std::vector<Term>& terms, double lr, double theta) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    if (t.coeff != complex(0.0, 0.0)) top = std::max(top, t.power * lr + std::log(std::abs(t.coeff)));
  }
  if (!std::isfinite(top)) return top;
  complex sum = 0.0;
  for (const auto& t : terms) {
    if (t.coeff == complex(0.0, 0.0)) continue;
    sum += t.coeff * std::exp(t.power * lr - top) * std::polar(1.0, t.power * theta);
  }
  return top + std::log(std::abs(sum));
}

/// log(sum_k e^{x_k}).
double log_sum_exp(const std::vector<double>& xs) {
  double top = -std::numeric_limits<double>::infinity();
  for (double x : xs) top = std::max(top, x);
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - top);
  return top + std::log(sum);
}

}  // namespace

Su3Case su3_case(const Rational& gamma1, const Rational& gamma2) {
  const bool a = gamma1.is_integer();
  const bool b = gamma2.is_integer();
  const bool s = (gamma1 + gamma2).is_integer();
  if (a && b) return Su3Case::all_integer;
  if (a) return Su3Case::gamma1_integer;
  if (b) return Su3Case::gamma2_integer;
  if (s) return Su3Case::sum_integer;
  return Su3Case::none;
}

const char* to_string(Su3Case c) {
  switch (c) {
    case Su3Case::all_integer: return "all integer";
    case Su3Case::none: return "none";
    case Su3Case::gamma1_integer: return "gamma1 integer";
    case Su3Case::gamma2_integer: return "gamma2 integer";
    case Su3Case::sum_integer: return "sum integer";
  }
  return "?";
}

Su3Oracle::Su3Oracle(Su3Params p) : p_(std::move(p)) {
  namespace iv = invariant_name;
  if (p_.gamma1 <= Rational(-1) || p_.gamma2 <= Rational(-1)) throw InvalidInput(iv::kGamma, "gamma_i must exceed -1");
  if (!(p_.xi1 > 0.0) || !(p_.xi2 > 0.0)) throw InvalidInput(iv::kLambdaPositive, "xi_1 and xi_2 must be positive");
  const bool a = p_.gamma1.is_integer();
  const bool b = p_.gamma2.is_integer();
  const bool s = (p_.gamma1 + p_.gamma2).is_integer();
  if ((!a && p_.c1 != complex(0.0, 0.0)) || (!b && p_.c2 != complex(0.0, 0.0)) || (!s && p_.c3 != complex(0.0, 0.0))) {
    throw InvalidInput(iv::kCVanishing, std::string("c not allowed in the ") + to_string(su3_case(p_.gamma1, p_.gamma2)) +
                                            " case");
  }
  g1_ = p_.gamma1.to_double();
  g2_ = p_.gamma2.to_double();
  big_gamma_ = (g1_ + 1.0) * (g2_ + 1.0) * (g1_ + g2_ + 2.0);
}

double Su3Oracle::log_P(double lr, double theta) const {
  const double m1 = g1_ + 1.0, m2 = g2_ + 1.0;
  const double a = log_abs({{1.0, m1}, {-p_.c1, 0.0}}, lr, theta);
  const double b = log_abs({{1.0, m1 + m2}, {-p_.c2, m1}, {-p_.c3, 0.0}}, lr, theta);
  return log_sum_exp({std::log(m2 * p_.xi1), std::log((m1 + m2) * p_.xi2) + 2.0 * a,
                      std::log(m1 / (p_.xi1 * p_.xi2)) + 2.0 * b});
}

double Su3Oracle::log_Q(double lr, double theta) const {
  const double m1 = g1_ + 1.0, m2 = g2_ + 1.0, s = m1 + m2;
  const double a = log_abs({{1.0, m2}, {-m1 * p_.c2 / s, 0.0}}, lr, theta);
  const double b = log_abs({{1.0, s}, {-s * p_.c1 / m2, m2}, {m1 * (p_.c3 + p_.c1 * p_.c2) / m2, 0.0}}, lr, theta);
  return log_sum_exp({std::log(m1 * p_.xi1 * p_.xi2), std::log(s / p_.xi2) + 2.0 * a, std::log(m2 / p_.xi1) + 2.0 * b});
}

std::array<double, 2> Su3Oracle::log_eu(complex z) const {
  const double lr = std::log(std::abs(z));
  const double th = std::arg(z);
  const double lp = log_P(lr, th);
  const double lq = log_Q(lr, th);
  const double base = std::log(4.0 * big_gamma_);
  return {base + 2.0 * g1_ * lr + lq - 2.0 * lp, base + 2.0 * g2_ * lr + lp - 2.0 * lq};
}

std::array<double, 2> Su3Oracle::eu(complex z) const {
  const auto l = log_eu(z);
  return {std::exp(l[0]), std::exp(l[1])};
}

PlaneQuadrature Su3Oracle::mass(int i, double tol) const {
  PlaneQuadratureOptions opt;
  opt.tol = tol;
  opt.rate_inner = 2.0 + 2.0 * (i == 1 ? g1_ : g2_);
  opt.rate_outer = 2.0 + 2.0 * (i == 1 ? g2_ : g1_);
  return plane_integral([this, i](complex z) { return log_eu(z)[i - 1]; }, opt);
}

TodaParams Su3Oracle::to_params() const {
  const double m1 = g1_ + 1.0, m2 = g2_ + 1.0;
  const double four_gamma = 4.0 * big_gamma_;
  std::vector<std::optional<double>> lambda{m2 * p_.xi1 / four_gamma, (m1 + m2) * p_.xi2 / four_gamma,
                                            m1 / (four_gamma * p_.xi1 * p_.xi2)};
  std::map<CIndex, complex> c;
  if (p_.c1 != complex(0.0, 0.0)) c[{1, 0}] = -p_.c1;
  if (p_.c2 != complex(0.0, 0.0)) c[{2, 1}] = -p_.c2;
  if (p_.c3 != complex(0.0, 0.0)) c[{2, 0}] = -p_.c3;
  return make_params(exponent_data(2, {p_.gamma1, p_.gamma2}), lambda, c);
}

Su3Params su3_from_params(const TodaParams& params) {
  if (params.n() != 2 || !params.data.gamma.is_exact()) {
    throw InvalidInput(invariant_name::kRank, "the SU(3) oracle needs n = 2 with exact gamma");
  }
  Su3Params p;
  p.gamma1 = params.data.gamma.exact_value(1);
  p.gamma2 = params.data.gamma.exact_value(2);
  const double g1 = p.gamma1.to_double(), g2 = p.gamma2.to_double();
  const double four_gamma = 4.0 * (g1 + 1.0) * (g2 + 1.0) * (g1 + g2 + 2.0);
  p.xi1 = four_gamma * params.lambda[0] / (g2 + 1.0);
  p.xi2 = four_gamma * params.lambda[1] / (g1 + g2 + 2.0);
  p.c1 = -params.c_at(1, 0);
  p.c2 = -params.c_at(2, 1);
  p.c3 = -params.c_at(2, 0);
  return p;
}

}  // namespace toda
