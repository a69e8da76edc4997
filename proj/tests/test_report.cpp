#include <doctest.h>

#include "zerocurv/catalog.hpp"
#include "zerocurv/parse.hpp"
#include "zerocurv/report.hpp"

using namespace zerocurv;

TEST_CASE("scalar and matrix parsing") {
  CHECK(parse_scalar("3/4") == Scalar(Rational(3, 4)));
  CHECK(parse_scalar("-2") == Scalar(-2));
  CHECK(parse_scalar("sqrt(2)") == Scalar::sqrt_of(2));
  CHECK(parse_scalar("1-3*sqrt(8)") == Scalar(1) - Scalar(6) * Scalar::sqrt_of(2));
  CHECK(parse_scalar("1/2 + 1/3*sqrt(5)") == Scalar(Rational(1, 2), Rational(1, 3), 5));
  CHECK_THROWS(parse_scalar("abc"));
  CHECK_THROWS(parse_scalar("2sqrt(3)"));
  LinearMap a = parse_matrix("1,0,0, 0,1,0, 0,0,2");
  CHECK(a(2, 2) == Scalar(2));
  LinearMap b = parse_matrix(R"j([["1","sqrt(2)","0"],["0","1","0"],["0","0","1"]])j");
  CHECK(b(0, 1) == Scalar::sqrt_of(2));
  CHECK_THROWS(parse_matrix("1,2,3"));
  CHECK_THROWS_AS(parse_matrix("1,2,3,2,4,6,0,0,1"), SingularMatrix);
}

TEST_CASE("exact scalars survive JSON") {
  for (const Scalar& s : {Scalar(Rational(-7, 3)), Scalar(Rational(1, 2), Rational(-5, 7), 3), Scalar(0)}) {
    CHECK(scalar_from_json(json::parse(scalar_to_json(s).dump())) == s);
  }
  CHECK(scalar_to_json(Scalar(Rational(6, 4))) == "3/2");
}

TEST_CASE("report round trip") {
  for (const char* s : {"x1^3 + x1^2*x2 + x1^4*x3", "x2^2 - 2*x1^2*x2 + x1^4 + x1^7", "x1^2*x2^2", "x1^4"}) {
    AnalysisReport r = analyze(parse_polynomial(s));
    json j = report_to_json(r);
    CHECK(j["schema_version"] == kSchemaVersion);
    AnalysisReport back = report_from_json(json::parse(j.dump()));
    CHECK(back.height.h == r.height.h);
    CHECK(back.chart.final_poly == r.chart.final_poly);
    CHECK(back.input == r.input);
    CHECK(report_to_json(back) == j);
  }
}

TEST_CASE("smooth factor chart survives JSON") {
  // (x1 + 2*x2 + x3 - (x1 - x2)^2)^2
  AnalysisReport r = analyze(parse_polynomial(
      "x1^4 - 4*x1^3*x2 - 2*x1^3 + 6*x1^2*x2^2 - 2*x1^2*x3 + x1^2 - 4*x1*x2^3 + 6*x1*x2^2 + 4*x1*x2*x3 + "
      "4*x1*x2 + 2*x1*x3 + x2^4 - 4*x2^3 - 2*x2^2*x3 + 4*x2^2 + 4*x2*x3 + x3^2"));
  REQUIRE(r.chart.smooth);
  CHECK(r.height.h == 2);
  CHECK(r.height.nu == 0);
  CHECK(!r.height.linearly_adapted);
  json j = report_to_json(r);
  AnalysisReport back = report_from_json(json::parse(j.dump()));
  REQUIRE(back.chart.smooth);
  CHECK(back.chart.smooth->factor == r.chart.smooth->factor);
  CHECK(report_to_json(back) == j);
}

TEST_CASE("analyze examples") {
  auto f = analyze(parse_polynomial("x1^3+x1^2*x2+x1^4*x3"));
  CHECK(f.decomposition.kind == DecompositionCase::Form);
  CHECK(f.height.h == 2);
  CHECK(f.height.nu == 0);
  CHECK(f.exponents.beta == Rational(1, 2));
  CHECK(f.exponents.p_s == 2);
  auto t = analyze(parse_polynomial("x1^2*x2^2"));
  CHECK(t.decomposition.kind == DecompositionCase::TwoVar);
  CHECK(t.height.nu == 1);
  CHECK(t.exponents.log_flag == 1);
  try {
    analyze(parse_polynomial("x1^2+x2^2+x3^2"));
    FAIL("expected NotDegenerate");
  } catch (const StructureError& e) {
    CHECK(e.kind() == StructureError::Kind::NotDegenerate);
  }
  // a user matrix must produce a shape
  LinearMap shear = parse_matrix("1,0,0, 1,1,0, 0,0,1");
  auto m = analyze(parse_polynomial("x1^3+x1^2*x2+x1^4*x3"), shear);
  CHECK(m.height.h == 2);
}

TEST_CASE("catalog entries match their hand-derived values") {
  for (const auto& e : catalog()) {
    auto c = check_entry(e);
    CAPTURE(e.name);
    for (const auto& m : c.mismatches) CAPTURE(m);
    CHECK(c.pass);
  }
}
