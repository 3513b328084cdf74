#include "toda/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace toda {

std::vector<CIndex> admissible_support(const ExponentData& data) {
  std::vector<CIndex> out;
  const std::size_t n = data.n();
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (data.gamma.is_positive_integer(data.mu_sum(j, i))) out.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t dimension(const ExponentData& data) { return data.n() + 2 * admissible_support(data).size(); }

double lambda_product_target(const ExponentData& data) {
  const std::size_t n = data.n();
  double target = std::ldexp(1.0, -static_cast<int>(n * (n + 1)));
  if (data.gamma.is_exact()) {
    Rational prod(1);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = i; j <= n; ++j) {
        const Rational s = *data.gamma.exact_evaluate(data.mu_sum(i - 1, j));
        prod *= s * s;
      }
    }
    return target / prod.to_double();
  }
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i; j <= n; ++j) {
      const double s = data.gamma.evaluate(data.mu_sum(i - 1, j));
      target /= s * s;
    }
  }
  return target;
}

complex TodaParams::c_at(std::size_t i, std::size_t j) const {
  const auto it = c.find({i, j});
  return it == c.end() ? complex(0.0, 0.0) : it->second;
}

TodaParams make_params(ExponentData data, const std::vector<std::optional<double>>& lambda,
                       const std::map<CIndex, complex>& c, bool check_product) {
  namespace iv = invariant_name;
  const std::size_t n = data.n();
  if (lambda.size() != n + 1) {
    throw InvalidInput(iv::kLambdaCount, "expected " + std::to_string(n + 1) + " lambda entries, got " +
                                             std::to_string(lambda.size()));
  }
  TodaParams p;
  p.lambda.assign(n + 1, 0.0);
  double known = 1.0;
  for (std::size_t i = 0; i <= n; ++i) {
    if (!lambda[i]) {
      if (p.auto_slot) throw InvalidInput(iv::kLambdaAuto, "at most one lambda entry may be \"auto\"");
      p.auto_slot = i;
      continue;
    }
    const double v = *lambda[i];
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "lambda_" << i << " = " << v << " must be positive and finite";
      throw InvalidInput(iv::kLambdaPositive, os.str());
    }
    p.lambda[i] = v;
    known *= v;
  }
  const double target = lambda_product_target(data);
  if (p.auto_slot) {
    p.lambda[*p.auto_slot] = target / known;
  } else if (check_product && std::abs(known / target - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "lambda_0 * ... * lambda_n = " << known << " but must equal " << target << " (relative deviation "
       << std::abs(known / target - 1.0) << " > 1e-12)";
    throw InvalidInput(iv::kLambdaProduct, os.str());
  }

  const auto support = admissible_support(data);
  for (const auto& [key, value] : c) {
    const auto [i, j] = key;
    if (!(j < i && i <= n)) {
      throw InvalidInput(iv::kCIndex, "c_(" + std::to_string(i) + "," + std::to_string(j) +
                                          ") needs 0 <= j < i <= " + std::to_string(n));
    }
    if (std::find(support.begin(), support.end(), key) == support.end()) {
      throw InvalidInput(iv::kCVanishing, "c_(" + std::to_string(i) + "," + std::to_string(j) + ") must vanish: mu_" +
                                              std::to_string(j + 1) + " + ... + mu_" + std::to_string(i) + " = " +
                                              data.mu_sum(j, i).to_string() + " is not a positive integer");
    }
    if (value != complex(0.0, 0.0)) p.c[key] = value;
  }
  p.data = std::move(data);
  return p;
}

TodaParams canonical_params(ExponentData data) {
  const std::size_t n = data.n();
  const double each = std::pow(lambda_product_target(data), 1.0 / static_cast<double>(n + 1));
  std::vector<std::optional<double>> lambda(n + 1, each);
  lambda[n] = std::nullopt;
  return make_params(std::move(data), lambda, {});
}

}  // namespace toda
