#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "toda/invariants.hpp"
#include "toda/linearized.hpp"
#include "toda/su3_oracle.hpp"
#include "toda/verifier.hpp"

namespace toda::io {

using nlohmann::json;

/// Structured documents mirroring the report types field for field.
json to_json(const PlaneQuadrature& q);
json to_json(const ResidualReport& r);
json to_json(const DeterminantReport& r);
json to_json(const InvariantReport& r);
json to_json(const QuantizationReport& r);
json to_json(const TangentReport& r);

/// Human-readable tables with a PASS/FAIL verdict per item.
std::string to_text(const ResidualReport& r);
std::string to_text(const DeterminantReport& r);
std::string to_text(const InvariantReport& r);
std::string to_text(const QuantizationReport& r);
std::string to_text(const TangentReport& r);

/// %.17g, so every double in the CSV round-trips.
std::string format_double(double x);

/// Header re_z,im_z,u_1..u_n,eu_1..eu_n then one row per point.
std::string sample_csv(const TodaSolution& sol, const std::vector<complex>& points);

/// sample_csv columns followed by oracle_eu_1,oracle_eu_2,rel_diff_1,rel_diff_2 (n = 2 only).
struct OracleSample {
  std::string csv;
  double max_rel_diff = 0.0;
};
OracleSample oracle_csv(const TodaSolution& sol, const Su3Oracle& oracle, const std::vector<complex>& points);

}  // namespace toda::io
