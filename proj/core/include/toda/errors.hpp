#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace toda {

/// A parameter set violates one of the solution-family constraints.
/// `invariant` is a short stable name of the violated constraint.
class InvalidInput : public std::invalid_argument {
 public:
  InvalidInput(std::string invariant, const std::string& what)
      : std::invalid_argument(invariant + ": " + what), invariant_(std::move(invariant)) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

/// A computation would exceed its declared size or iteration budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace invariant_name {
inline constexpr const char* kRank = "rank range";
inline constexpr const char* kGamma = "gamma > -1";
inline constexpr const char* kLambdaCount = "lambda count";
inline constexpr const char* kLambdaPositive = "lambda positivity";
inline constexpr const char* kLambdaProduct = "lambda product normalization";
inline constexpr const char* kLambdaAuto = "single auto lambda";
inline constexpr const char* kCIndex = "c index range";
inline constexpr const char* kCVanishing = "c vanishing rule";
}  // namespace invariant_name

}  // namespace toda
