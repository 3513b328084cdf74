#include "toda/io/params_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "toda/cartan.hpp"
#include "toda/invariants.hpp"

namespace toda::io {

namespace {

constexpr const char* kDocument = "document";
constexpr const char* kUnknown = "unknown field";
constexpr const char* kType = "field type";

void only_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw DocumentError(kUnknown, where + "." + key, "unknown field \"" + key + "\"");
  }
}

const json& require(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) throw DocumentError(kDocument, where + "." + key, "missing required field");
  return obj.at(key);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw DocumentError(kType, where, "expected a number");
  return v.get<double>();
}

std::size_t index(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw DocumentError(kType, where, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

Rational rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (!v.is_string()) throw DocumentError(kType, where, "expected an exact rational string such as \"1/3\"");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    throw DocumentError(kType, where, e.what());
  }
}

std::string key_name(const CIndex& k) { return std::to_string(k.first) + std::to_string(k.second); }

}  // namespace

ParsedDocument parse_document(const json& doc, bool check_product) {
  if (!doc.is_object()) throw DocumentError(kType, "$", "expected an object");
  only_keys(doc, "$", {"n", "gamma", "lambda", "c", "summary"});
  const std::size_t n = index(require(doc, "$", "n"), "$.n");

  const json& g = require(doc, "$", "gamma");
  if (!g.is_array()) throw DocumentError(kType, "$.gamma", "expected an array");
  if (g.size() != n) {
    throw DocumentError(invariant_name::kRank, "$.gamma",
                        "expected " + std::to_string(n) + " entries, got " + std::to_string(g.size()));
  }
  std::vector<Rational> gamma;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::string where = "$.gamma[" + std::to_string(i) + "]";
    gamma.push_back(rational(g[i], where));
    if (gamma.back() <= Rational(-1)) {
      throw DocumentError(invariant_name::kGamma, where, "gamma_" + std::to_string(i + 1) + " = " + gamma.back().to_string() + " must exceed -1");
    }
  }

  const json& l = require(doc, "$", "lambda");
  if (!l.is_array()) throw DocumentError(kType, "$.lambda", "expected an array");
  std::vector<std::optional<double>> lambda;
  for (std::size_t i = 0; i < l.size(); ++i) {
    const std::string where = "$.lambda[" + std::to_string(i) + "]";
    if (l[i].is_string()) {
      if (l[i].get<std::string>() != "auto") throw DocumentError(kType, where, "expected a number or \"auto\"");
      lambda.push_back(std::nullopt);
    } else {
      lambda.push_back(number(l[i], where));
    }
  }

  std::map<CIndex, complex> c;
  if (doc.contains("c")) {
    const json& cs = doc.at("c");
    if (!cs.is_array()) throw DocumentError(kType, "$.c", "expected an array");
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const std::string where = "$.c[" + std::to_string(k) + "]";
      if (!cs[k].is_object()) throw DocumentError(kType, where, "expected an object");
      only_keys(cs[k], where, {"i", "j", "re", "im"});
      const CIndex key{index(require(cs[k], where, "i"), where + ".i"), index(require(cs[k], where, "j"), where + ".j")};
      const double re = cs[k].contains("re") ? number(cs[k].at("re"), where + ".re") : 0.0;
      const double im = cs[k].contains("im") ? number(cs[k].at("im"), where + ".im") : 0.0;
      if (c.contains(key)) throw DocumentError(invariant_name::kCIndex, where, "duplicate c_" + key_name(key));
      c[key] = complex(re, im);
    }
  }

  ParsedDocument out;
  try {
    ExponentData data = exponent_data(n, gamma);
    out.params = make_params(std::move(data), lambda, c, check_product);
  } catch (const DocumentError&) {
    throw;
  } catch (const InvalidInput& e) {
    std::string detail = e.what();
    const std::string prefix = e.invariant() + ": ";
    if (detail.starts_with(prefix)) detail.erase(0, prefix.size());
    throw DocumentError(e.invariant(), "$", detail);
  }
  double product = 1.0;
  for (double v : out.params.lambda) product *= v;
  out.lambda_product_deviation = std::abs(product / lambda_product_target(out.params.data) - 1.0);
  out.lambda_product_ok = out.lambda_product_deviation <= 1e-12;
  return out;
}

ParsedDocument read_document(const std::string& path, bool check_product) {
  std::ifstream in(path);
  if (!in) throw DocumentError(kDocument, path, "cannot open input file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DocumentError(kDocument, path + " (byte " + std::to_string(e.byte) + ")", "malformed JSON");
  }
  return parse_document(doc, check_product);
}

json params_document(const TodaParams& params) {
  json doc;
  doc["n"] = params.n();
  doc["gamma"] = json::array();
  for (const auto& g : params.data.gamma.exact_values()) doc["gamma"].push_back(g.to_string());
  doc["lambda"] = params.lambda;
  doc["c"] = json::array();
  for (const auto& [key, value] : params.c) {
    doc["c"].push_back({{"i", key.first}, {"j", key.second}, {"re", value.real()}, {"im", value.imag()}});
  }
  return doc;
}

json solution_summary(const TodaParams& params) {
  const auto& d = params.data;
  const std::size_t n = d.n();
  auto exact = [&](const ExponentVector& e) { return d.gamma.exact_evaluate(e)->to_string(); };
  json s;
  s["dimension"] = dimension(d);
  s["lambda_product_target"] = lambda_product_target(d);
  s["admissible_support"] = json::array();
  for (const auto& key : admissible_support(d)) s["admissible_support"].push_back({{"i", key.first}, {"j", key.second}});
  s["mu"] = json::array();
  s["alpha"] = json::array();
  s["beta"] = json::array();
  for (std::size_t i = 1; i <= n; ++i) {
    s["mu"].push_back(exact(d.mu[i - 1]));
    s["alpha"].push_back(exact(d.alpha[i - 1]));
  }
  for (std::size_t i = 0; i <= n; ++i) s["beta"].push_back(exact(d.beta[i]));
  s["indicial_w"] = json::array();
  for (const auto& w : indicial_coefficients(d).exact) s["indicial_w"].push_back(w.to_string());
  s["mass_over_4pi"] = json::array();
  for (std::size_t i = 1; i <= n; ++i) s["mass_over_4pi"].push_back(mass_target_over_4pi(d, i).to_string());
  return s;
}

}  // namespace toda::io
