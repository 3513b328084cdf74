#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "toda/params.hpp"

namespace toda::io {

using nlohmann::json;

/// A parameter document failed to parse or to validate. The invariant name is
/// either a document-level one ("document", "unknown field", "field type") or
/// one of invariant_name::*; location is a JSON path such as $.c[1].re.
class DocumentError : public InvalidInput {
 public:
  DocumentError(std::string invariant, std::string location, const std::string& what)
      : InvalidInput(std::move(invariant), location + ": " + what), location_(std::move(location)),
        detail_(location_ + ": " + what) {}
  const std::string& location() const { return location_; }
  /// "location: message" without the invariant prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::string location_;
  std::string detail_;
};

struct ParsedDocument {
  TodaParams params;
  /// The lambda constraint held as given (always true unless check_product is off).
  bool lambda_product_ok = true;
  double lambda_product_deviation = 0.0;
};

/// {"n", "gamma": ["p/q" | int], "lambda": [number | "auto"], "c": [{"i","j","re","im"}]}
/// plus an optional "summary" object that is ignored (build output re-ingests).
/// With check_product off, an off-target lambda product is accepted and reported.
ParsedDocument parse_document(const json& doc, bool check_product = true);
ParsedDocument read_document(const std::string& path, bool check_product = true);

/// The document of a parameter set with lambda resolved; round-trips through parse_document.
json params_document(const TodaParams& params);

/// Dimension, lambda constraint, admissible support, mu, alpha, beta, indicial w.
json solution_summary(const TodaParams& params);

}  // namespace toda::io
