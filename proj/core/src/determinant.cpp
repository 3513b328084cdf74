#include "toda/determinant.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace toda {

namespace {

class MinorTable {
 public:
  MinorTable(const PolyMatrix& m, double prune_rel) : m_(m), prune_(prune_rel) {}

  /// Minor on rows 0..r-1 and the columns in mask, r = popcount(mask).
  const BiExpPoly& get(std::uint32_t mask) {
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    const int r = std::popcount(mask);
    const std::size_t dim = m_.front().front().dim();
    BiExpPoly out(dim);
    if (r == 0) {
      out = BiExpPoly::constant(dim, 1.0);
    } else {
      const auto& row = m_[static_cast<std::size_t>(r - 1)];
      int pos = 0;
      for (std::uint32_t q = 0; q < 32; ++q) {
        if (!(mask & (1u << q))) continue;
        const BiExpPoly& a = row[q];
        if (!a.empty()) {
          const BiExpPoly& sub = get(mask & ~(1u << q));
          if (!sub.empty()) {
            const BiExpPoly prod = a * sub;
            out = ((r - 1 + pos) % 2 == 0) ? out + prod : out - prod;
          }
        }
        ++pos;
      }
      if (prune_ > 0.0) out = prune_cancelled(out, prune_);
    }
    return memo_.emplace(mask, std::move(out)).first->second;
  }

 private:
  const PolyMatrix& m_;
  double prune_;
  std::unordered_map<std::uint32_t, BiExpPoly> memo_;
};

void check_square(const PolyMatrix& m) {
  if (m.empty()) throw std::invalid_argument("det_matrix: empty matrix");
  if (m.size() > 16) throw std::invalid_argument("det_matrix: matrix too large");
  for (const auto& row : m) {
    if (row.size() != m.size()) throw std::invalid_argument("det_matrix: matrix is not square");
  }
}

}  // namespace

BiExpPoly det_matrix(const PolyMatrix& m, double prune_rel) {
  check_square(m);
  MinorTable table(m, prune_rel);
  return table.get((1u << m.size()) - 1u);
}

PolyMatrix derivative_matrix(const BiExpPoly& f, std::size_t k, const Gamma& gamma) {
  PolyMatrix m(k, std::vector<BiExpPoly>(k));
  BiExpPoly row_start = f;
  for (std::size_t p = 0; p < k; ++p) {
    BiExpPoly cur = row_start;
    for (std::size_t q = 0; q < k; ++q) {
      m[p][q] = cur;
      if (q + 1 < k) cur = differentiate(cur, Dir::zbar, gamma);
    }
    if (p + 1 < k) row_start = differentiate(row_start, Dir::z, gamma);
  }
  return m;
}

BiExpPoly det_k(const BiExpPoly& f, std::size_t k, const Gamma& gamma, double prune_rel) {
  if (k < 1) throw std::out_of_range("det_k: k must be >= 1");
  return det_matrix(derivative_matrix(f, k, gamma), prune_rel);
}

std::vector<BiExpPoly> det_all(const BiExpPoly& f, std::size_t kmax, const Gamma& gamma, double prune_rel) {
  if (kmax < 1) throw std::out_of_range("det_all: kmax must be >= 1");
  const PolyMatrix m = derivative_matrix(f, kmax, gamma);
  MinorTable table(m, prune_rel);
  std::vector<BiExpPoly> out;
  for (std::size_t k = 1; k <= kmax; ++k) out.push_back(table.get((1u << k) - 1u));
  return out;
}

std::vector<BiExpPoly> det_all_moments(const ExponentData& data, const Eigen::MatrixXcd& M, std::size_t kmax) {
  const std::size_t n = data.n();
  const std::size_t m = n + 1;
  if (static_cast<std::size_t>(M.rows()) != m || M.rows() != M.cols()) {
    throw DimensionMismatch("det_all_moments: moment matrix must be (n+1)x(n+1)");
  }
  if (kmax < 1 || kmax > m) throw std::out_of_range("det_all_moments: kmax must be in 1..n+1");
  const Gamma& g = data.gamma;

  struct Subset {
    std::vector<Eigen::Index> idx;
    double vandermonde = 1.0;
    ExponentVector exponent;
  };
  std::vector<BiExpPoly> out;
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::vector<Subset> subsets;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
      Subset s;
      s.exponent = ExponentVector(n);
      for (std::size_t i = 0; i < m; ++i) {
        if (!(mask & (1u << i))) continue;
        for (Eigen::Index p : s.idx) s.vandermonde *= g.evaluate(data.beta[i] - data.beta[static_cast<std::size_t>(p)]);
        s.idx.push_back(static_cast<Eigen::Index>(i));
        s.exponent += data.beta[i];
      }
      const auto kk = static_cast<std::int64_t>(k);
      s.exponent = g.canonical(s.exponent - ExponentVector::constant(n, Rational(kk * (kk - 1), 2)));
      subsets.push_back(std::move(s));
    }
    std::vector<BiExpTerm> terms;
    const auto kk = static_cast<Eigen::Index>(k);
    Eigen::MatrixXcd sub(kk, kk);
    for (const auto& I : subsets) {
      for (const auto& J : subsets) {
        for (Eigen::Index p = 0; p < kk; ++p) {
          for (Eigen::Index q = 0; q < kk; ++q) sub(p, q) = M(I.idx[p], J.idx[q]);
        }
        const complex c = sub.determinant() * (I.vandermonde * J.vandermonde);
        if (c != complex(0.0, 0.0)) terms.push_back({c, I.exponent, J.exponent, std::abs(c)});
      }
    }
    out.emplace_back(n, std::move(terms));
  }
  return out;
}

}  // namespace toda
