#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "zerocurv/adapt.hpp"
#include "zerocurv/structure.hpp"

namespace zerocurv {

inline constexpr const char* kSchemaVersion = "1.0";

struct AnalysisReport {
  Polynomial input{3};
  HessianReport hessian;
  Decomposition decomposition;
  AdaptedChart chart;
  HeightReport height;
  ExponentReport exponents;
  /// milliseconds per stage
  std::map<std::string, double> timings;
};

/// Full pipeline. `assume` replaces the automatic decomposition by a
/// user-supplied matrix, checked exactly. Throws StructureError / AdaptError.
AnalysisReport analyze(const Polynomial& phi, const std::optional<LinearMap>& assume = std::nullopt);

using nlohmann::json;

/// Rationals as "p/q" strings; elements of Q(sqrt(D)) as {"a","b","D"}.
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);
json rational_to_json(const Rational& q);
Rational rational_from_json(const json& j);

/// {"text": canonical text, "nvars": n, "terms": [[e1, e2, e3, c], ...]}
json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const json& j);

json matrix_to_json(const LinearMap& a);
LinearMap matrix_from_json(const json& j);

json chart_to_json(const AdaptedChart& c);
AdaptedChart chart_from_json(const json& j);

json hessian_to_json(const HessianReport& h);
json decomposition_to_json(const Decomposition& d);
json height_to_json(const HeightReport& h);
json exponents_to_json(const ExponentReport& e);

json report_to_json(const AnalysisReport& r);
/// Inverse of report_to_json for every exact field; timings are kept as read.
AnalysisReport report_from_json(const json& j);

/// Accepts 9 entries, row-major, as a JSON array or comma separated text;
/// each entry is a rational "p/q" or "a+b*sqrt(D)" / "a-b*sqrt(D)".
LinearMap parse_matrix(const std::string& text);
Scalar parse_scalar(const std::string& text);

}  // namespace zerocurv
