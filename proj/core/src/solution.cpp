#include "toda/solution.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "toda/determinant.hpp"

namespace toda {

namespace {

/// a / b for two scaled values.
complex ratio(const CompiledPoly::Scaled& a, const CompiledPoly::Scaled& b) {
  if (a.mantissa == complex(0.0, 0.0)) return 0.0;
  return a.mantissa / b.mantissa * std::exp(a.log_scale - b.log_scale);
}

/// D D_{z zbar} - D_z D_zbar as the pair sum
/// 1/2 sum_{a,b} (p_b - p_a)(q_b - q_a) c_a c_b z^{p_a + p_b - 1} zbar^{q_a + q_b - 1}.
/// Pairs with equal exponents drop out exactly, so the leading terms of the
/// two products never have to cancel in floating point near 0 or infinity.
BiExpPoly mixed_wronskian(const BiExpPoly& p, const Gamma& gamma) {
  const auto& t = p.terms();
  const std::size_t dim = p.dim();
  const ExponentVector one = ExponentVector::constant(dim, 1);
  std::vector<BiExpTerm> out;
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t b = a + 1; b < t.size(); ++b) {
      const double dp = gamma.evaluate(t[b].zexp - t[a].zexp);
      const double dq = gamma.evaluate(t[b].zbarexp - t[a].zbarexp);
      if (dp == 0.0 || dq == 0.0) continue;
      const complex c = dp * dq * t[a].coeff * t[b].coeff;
      out.push_back({c, gamma.canonical(t[a].zexp + t[b].zexp - one), gamma.canonical(t[a].zbarexp + t[b].zbarexp - one),
                     std::abs(c)});
    }
  }
  return BiExpPoly(dim, std::move(out));
}

}  // namespace

std::vector<BiExpPoly> build_P(const TodaParams& params) {
  const auto& d = params.data;
  const std::size_t n = d.n();
  std::vector<BiExpPoly> P;
  for (std::size_t i = 1; i <= n; ++i) {
    BiExpPoly p = BiExpPoly::holomorphic(1.0, d.mu_sum(0, i));
    for (std::size_t j = 0; j < i; ++j) {
      const complex c = params.c_at(i, j);
      if (c != complex(0.0, 0.0)) p += BiExpPoly::holomorphic(c, d.mu_sum(0, j));
    }
    P.push_back(std::move(p));
  }
  return P;
}

BiExpPoly build_f(const TodaParams& params) {
  const auto& d = params.data;
  const std::size_t n = d.n();
  BiExpPoly inner = BiExpPoly::constant(n, params.lambda[0]);
  const auto P = build_P(params);
  for (std::size_t i = 1; i <= n; ++i) inner += (P[i - 1] * P[i - 1].conj()).scaled(params.lambda[i]);
  return inner.shifted(d.beta[0], d.beta[0]);
}

Eigen::MatrixXcd moment_factor(const TodaParams& params) {
  const std::size_t n = params.n();
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1));
  for (std::size_t k = 0; k <= n; ++k) {
    const double s = std::sqrt(params.lambda[k]);
    B(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = s;
    for (std::size_t j = 0; j < k; ++j) {
      B(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = s * params.c_at(k, j);
    }
  }
  return B;
}

BiExpPoly f_from_moments(const ExponentData& data, const Eigen::MatrixXcd& M) {
  const std::size_t n = data.n();
  if (static_cast<std::size_t>(M.rows()) != n + 1 || M.rows() != M.cols()) {
    throw DimensionMismatch("f_from_moments: moment matrix must be (n+1)x(n+1)");
  }
  std::vector<BiExpTerm> terms;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      const complex m = M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (m != complex(0.0, 0.0)) terms.push_back({m, data.beta[i], data.beta[j], std::abs(m)});
    }
  }
  return BiExpPoly(n, std::move(terms));
}

Eigen::MatrixXcd factor_moments(const Eigen::MatrixXcd& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("factor_moments: matrix is not square");
  const double scale = M.cwiseAbs().maxCoeff();
  if ((M - M.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("factor_moments: matrix is not hermitian");
  }
  const Eigen::Index m = M.rows();
  const Eigen::MatrixXcd R = M.reverse();  // J M J
  Eigen::LLT<Eigen::MatrixXcd> llt(R);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("factor_moments: matrix is not positive definite");
  const Eigen::MatrixXcd L = llt.matrixL();
  Eigen::MatrixXcd B = L.reverse();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) B(i, j) = 0.0;
  }
  return B;
}

MomentChart chart_from_factor(const Eigen::MatrixXcd& B) {
  MomentChart out;
  const Eigen::Index m = B.rows();
  for (Eigen::Index k = 0; k < m; ++k) {
    const double s = B(k, k).real();
    out.lambda.push_back(s * s);
    for (Eigen::Index j = 0; j < k; ++j) {
      out.c[{static_cast<std::size_t>(k), static_cast<std::size_t>(j)}] = B(j, k) / s;
    }
  }
  return out;
}

SolutionEvaluator::SolutionEvaluator(const std::vector<BiExpPoly>& D, const Gamma& gamma) : n_(D.size() - 1) {
  for (const auto& p : D) {
    d_.emplace_back(p, gamma);
    dz_.emplace_back(differentiate(p, Dir::z, gamma), gamma);
    wr_.emplace_back(mixed_wronskian(p, gamma), gamma);
  }
}

PointFields SolutionEvaluator::fields(complex z) const {
  const std::size_t n = n_;
  PointFields out;
  out.logD.resize(n + 1);
  out.U.resize(n);
  out.u.resize(n);
  out.eu.resize(n);
  out.Uz.resize(n);
  out.lapU.resize(n);
  for (std::size_t k = 1; k <= n + 1; ++k) {
    const auto d = d_[k - 1].eval_scaled(z);
    const double re = d.mantissa.real();
    if (!(re > 0.0)) out.positive = false;
    out.max_imag_ratio = std::max(out.max_imag_ratio, std::abs(d.mantissa.imag()) / std::abs(d.mantissa));
    out.logD[k - 1] = std::log(std::abs(re)) + d.log_scale;
    if (k > n) break;
    const complex rz = ratio(dz_[k - 1].eval_scaled(z), d);
    const auto w = wr_[k - 1].eval_scaled(z);
    const complex rw = ratio(w, d) / d.mantissa * std::exp(-d.log_scale);
    const double kk = static_cast<double>(k * (k - 1));
    out.U[k - 1] = -kk * std::numbers::ln2 - out.logD[k - 1];
    out.Uz[k - 1] = -rz;
    out.lapU[k - 1] = (-4.0 * rw).real();
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = i == 0 ? 0.0 : out.U[i - 1];
    const double next = i + 1 == n ? 0.0 : out.U[i + 1];
    out.u[i] = 2.0 * out.U[i] - prev - next;
    out.eu[i] = std::exp(out.u[i]);
  }
  return out;
}

std::vector<double> SolutionEvaluator::u_values(complex z) const {
  std::vector<double> U(n_);
  for (std::size_t k = 1; k <= n_; ++k) {
    const auto d = d_[k - 1].eval_scaled(z);
    U[k - 1] = -static_cast<double>(k * (k - 1)) * std::numbers::ln2 - std::log(std::abs(d.mantissa.real())) -
               d.log_scale;
  }
  std::vector<double> u(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const double prev = i == 0 ? 0.0 : U[i - 1];
    const double next = i + 1 == n_ ? 0.0 : U[i + 1];
    u[i] = 2.0 * U[i] - prev - next;
  }
  return u;
}

TodaSolution build_solution(TodaParams params) {
  TodaSolution sol;
  const std::size_t n = params.n();
  sol.P = build_P(params);
  sol.f = build_f(params);
  sol.B = moment_factor(params);
  sol.M = sol.B * sol.B.adjoint();
  sol.D = det_all_moments(params.data, sol.M, n + 1);
  sol.eval = SolutionEvaluator(sol.D, params.data.gamma);
  sol.params = std::move(params);
  return sol;
}

double det_recursion_check(const TodaSolution& sol, std::size_t k) {
  const std::size_t n = sol.n();
  if (k < 1 || k > n) throw std::out_of_range("det_recursion_check: k must be in 1..n");
  const Gamma& g = sol.gamma();
  const BiExpPoly& Dk = sol.det(k);
  const BiExpPoly Dkz = differentiate(Dk, Dir::z, g);
  const BiExpPoly wronskian = Dk * differentiate(Dkz, Dir::zbar, g) - Dkz * differentiate(Dk, Dir::zbar, g);
  const BiExpPoly down = k >= 2 ? sol.det(k - 1) : BiExpPoly::constant(n, 1.0);
  return cancellation_ratio(sol.det(k + 1) * down - wronskian);
}

double scaling_identity_check(const BiExpPoly& f, const ExponentVector& beta, std::size_t k, const Gamma& gamma) {
  const ExponentVector b = gamma.canonical(beta);
  const ExponentVector kb = gamma.canonical(Rational(static_cast<std::int64_t>(k)) * b);
  const BiExpPoly lhs = det_k(f.shifted(b, b), k, gamma);
  const BiExpPoly rhs = det_k(f, k, gamma).shifted(kb, kb);
  return cancellation_ratio(lhs - rhs);
}

ProductFormulaResult product_formula_check(const TodaSolution& sol) {
  const auto& d = sol.params.data;
  const std::size_t n = d.n();
  const Gamma& g = d.gamma;
  const ExponentVector a1 = d.alpha[0];
  const BiExpPoly det = det_k(sol.f.shifted(a1, a1), n + 1, g, kDetPrune);
  ProductFormulaResult r;
  double expected = 1.0;
  for (double l : sol.params.lambda) expected *= l;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i; j <= n; ++j) {
      const double s = g.evaluate(d.mu_sum(i - 1, j));
      expected *= s * s;
    }
  }
  r.expected = expected;
  r.single_term = det.size() == 1;
  if (det.empty()) {
    r.coeff_rel_error = 1.0;
    return r;
  }
  const ExponentVector e = g.canonical(Rational(static_cast<std::int64_t>(n + 1)) * a1);
  const auto& t = det.terms().front();
  r.exponent_match = t.zexp == e && t.zbarexp == e;
  r.coeff = t.coeff;
  r.coeff_rel_error = std::abs(t.coeff - r.expected) / std::abs(r.expected);
  return r;
}

double vandermonde_check(const ExponentData& data, const std::vector<std::size_t>& indices) {
  const std::size_t n = data.n();
  const std::size_t m = indices.size();
  if (m == 0) throw std::invalid_argument("vandermonde_check: need at least one index");
  const Gamma& g = data.gamma;
  PolyMatrix J(m, std::vector<BiExpPoly>(m));
  for (std::size_t q = 0; q < m; ++q) {
    BiExpPoly cur = BiExpPoly::holomorphic(1.0, data.beta.at(indices[q]));
    for (std::size_t p = 0; p < m; ++p) {
      J[p][q] = cur;
      cur = differentiate(cur, Dir::z, g);
    }
  }
  const BiExpPoly det = det_matrix(J, 0.0);
  double coeff = 1.0;
  ExponentVector e(n);
  for (std::size_t q = 0; q < m; ++q) {
    e += data.beta[indices[q]];
    for (std::size_t p = 0; p < q; ++p) coeff *= g.evaluate(data.beta[indices[q]] - data.beta[indices[p]]);
  }
  const auto mm = static_cast<std::int64_t>(m);
  e = g.canonical(e - ExponentVector::constant(n, Rational(mm * (mm - 1), 2)));
  if (det.size() != 1) return coeff == 0.0 && det.empty() ? 0.0 : 1.0;
  const auto& t = det.terms().front();
  if (!(t.zexp == e) || !t.zbarexp.is_zero()) return 1.0;
  return std::abs(t.coeff - coeff) / std::abs(coeff);
}

double origin_constant(const TodaSolution& sol, std::size_t k) {
  const auto& d = sol.params.data;
  const auto kk = static_cast<Eigen::Index>(k);
  const double det = sol.M.topLeftCorner(kk, kk).determinant().real();
  double v = std::ldexp(det, static_cast<int>(k * (k - 1)));
  for (std::size_t q = 0; q < k; ++q) {
    for (std::size_t p = 0; p < q; ++p) {
      const double diff = d.gamma.evaluate(d.beta[q] - d.beta[p]);
      v *= diff * diff;
    }
  }
  return v;
}

}  // namespace toda
