#include "zerocurv/catalog.hpp"

#include "zerocurv/parse.hpp"

namespace zerocurv {

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> v;
    for (int k = 2; k <= 5; ++k) {
      std::string p = "x1^" + std::to_string(k);
      v.push_back({p, p, Rational(k), 0, HeightCase::OneVar, p, 0});
    }
    v.push_back({"x1^2*x2^2", "x1^2*x2^2", Rational(2), 1, HeightCase::TwoVar, "x1^2*x2^2", 0});
    v.push_back({"x1^2+x2^3", "x1^2 + x2^3", Rational(6, 5), 0, HeightCase::TwoVar, "x1^2 + x2^3", 0});
    // (x2 - x1^2)^2, expanded
    v.push_back({"(x2-x1^2)^2", "x2^2 - 2*x1^2*x2 + x1^4", Rational(2), 0, HeightCase::TwoVar, "x2^2", 1});
    for (int n = 5; n <= 9; ++n) {
      std::string xn = "x1^" + std::to_string(n);
      Rational h(2 * n, n + 2);
      h.canonicalize();
      v.push_back({"(x2-x1^2)^2+" + xn, "x2^2 - 2*x1^2*x2 + x1^4 + " + xn, h, 0,
                   HeightCase::TwoVar, "x2^2 + " + xn, 1});
    }
    v.push_back({"form c=(1,1,0)", "x1^3 + x1^2*x2 + x1^4*x3", Rational(2), 0, HeightCase::FormCase2,
                 "x1^2*x2 + x1^4*x3", 0});
    v.push_back({"form nu1=3", "x1^3 + x1^4*x2 + x1^5*x3", Rational(3), 0, HeightCase::FormCase1,
                 "x1^3 + x1^4*x2 + x1^5*x3", 0});
    v.push_back({"form nu1=nu2=2", "x1^2 + x1^2*x2 + x1^3*x3", Rational(2), 0, HeightCase::FormCase1,
                 "x1^2 + x1^2*x2 + x1^3*x3", 0});
    v.push_back({"form nu1=4", "x1^4 + x1^4*x2 + x1^6*x3", Rational(4), 0, HeightCase::FormCase1,
                 "x1^4 + x1^4*x2 + x1^6*x3", 0});
    return v;
  }();
  return entries;
}

CatalogCheck check_entry(const CatalogEntry& e) {
  CatalogCheck c;
  Polynomial phi = parse_polynomial(e.poly);
  c.report = analyze(phi);
  const auto& r = c.report;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) c.mismatches.push_back(what);
  };
  expect(r.height.h == e.h, "h = " + to_string(r.height.h) + ", expected " + to_string(e.h));
  expect(r.height.nu == e.nu, "nu = " + std::to_string(r.height.nu) + ", expected " + std::to_string(e.nu));
  expect(r.height.kind == e.kind,
         std::string("case = ") + to_string(r.height.kind) + ", expected " + to_string(e.kind));
  expect(r.chart.final_poly == parse_polynomial(e.final_poly),
         "chart ends in " + r.chart.final_poly.str() + ", expected " + e.final_poly);
  int tri = 0;
  for (const auto& s : r.chart.steps) tri += std::holds_alternative<TriangularStep>(s) ? 1 : 0;
  expect(tri == e.triangular_steps, std::to_string(tri) + " triangular steps, expected " +
                                        std::to_string(e.triangular_steps));
  expect(apply_chart(phi, r.chart.steps) == r.chart.final_poly, "chart does not reproduce its final polynomial");
  expect(r.exponents.beta * r.height.h == 1, "beta is not 1/h");
  c.pass = c.mismatches.empty();
  return c;
}

}  // namespace zerocurv
