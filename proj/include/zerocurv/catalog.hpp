#pragma once

#include <string>
#include <vector>

#include "zerocurv/report.hpp"

namespace zerocurv {

/// Hand-derived expectations for one corpus polynomial.
struct CatalogEntry {
  std::string name;
  std::string poly;
  Rational h;
  int nu = 0;
  HeightCase kind = HeightCase::OneVar;
  /// polynomial in the adapted chart
  std::string final_poly;
  int triangular_steps = 0;
};

const std::vector<CatalogEntry>& catalog();

struct CatalogCheck {
  bool pass = false;
  std::vector<std::string> mismatches;
  AnalysisReport report;
};

/// Runs analyze() and compares h, nu, case and chart; the chart must also
/// reproduce its final polynomial when re-applied to the input.
CatalogCheck check_entry(const CatalogEntry& e);

}  // namespace zerocurv
