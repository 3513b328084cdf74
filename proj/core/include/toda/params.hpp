#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toda/biexp.hpp"
#include "toda/cartan.hpp"
#include "toda/errors.hpp"

namespace toda {

/// (i, j) with 0 <= j < i <= n.
using CIndex = std::pair<std::size_t, std::size_t>;

/// Exactly the pairs with mu_{j+1} + ... + mu_i a positive integer.
std::vector<CIndex> admissible_support(const ExponentData& data);
/// n + 2 |admissible_support|.
std::size_t dimension(const ExponentData& data);
/// 2^{-n(n+1)} prod_{i<=j} (mu_i + ... + mu_j)^{-2}.
double lambda_product_target(const ExponentData& data);

/// A point of the solution manifold in the (lambda, c) chart.
struct TodaParams {
  ExponentData data;
  std::vector<double> lambda;
  std::map<CIndex, complex> c;
  /// Slot solved from the product constraint, if any.
  std::optional<std::size_t> auto_slot;

  std::size_t n() const { return data.n(); }
  /// c_{ij} if present, else 0.
  complex c_at(std::size_t i, std::size_t j) const;
};

/// Validates and completes a parameter set. One lambda entry may be nullopt
/// ("auto") and is solved from the product constraint. Zero c entries are
/// dropped. With check_product = false the product constraint is skipped
/// (used to construct deliberately corrupted solutions).
TodaParams make_params(ExponentData data, const std::vector<std::optional<double>>& lambda,
                       const std::map<CIndex, complex>& c, bool check_product = true);

/// All lambda equal, c = 0.
TodaParams canonical_params(ExponentData data);

}  // namespace toda
