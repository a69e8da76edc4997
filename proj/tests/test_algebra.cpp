#include <doctest.h>

#include "zerocurv/linear_map.hpp"
#include "zerocurv/parse.hpp"
#include "zerocurv/polynomial.hpp"
#include "zerocurv/roots.hpp"

using namespace zerocurv;

TEST_CASE("parser collects like terms") {
  auto p = parse_polynomial("2/3*x1 - x1");
  CHECK(p.str() == "-1/3*x1");
  CHECK(parse_polynomial("x1*x1 - x1^2").is_zero());
}

TEST_CASE("printer round-trips in graded-lex order") {
  for (const char* s : {"x1^3 + x1^2*x2 + x1^4*x3", "x1^2 + x2^3", "x1^2*x2^2", "-x2 + 1/2*x1^2*x3"}) {
    auto p = parse_polynomial(s);
    CHECK(parse_polynomial(p.str()) == p);
  }
  CHECK(parse_polynomial("x1^4*x3 + x1^2*x2 + x1^3").str() == "x1^3 + x1^2*x2 + x1^4*x3");
}

TEST_CASE("parse errors carry a kind") {
  auto kind_of = [](const char* s) {
    try {
      parse_polynomial(s);
    } catch (const ParseError& e) {
      return e.kind();
    }
    FAIL("no error for " << s);
    return ParseError::Kind::Syntax;
  };
  CHECK(kind_of("1.5*x1") == ParseError::Kind::NonRationalLiteral);
  CHECK(kind_of("x4") == ParseError::Kind::UnknownVariable);
  CHECK(kind_of("x1^65") == ParseError::Kind::DegreeCap);
  CHECK(kind_of("x1 +") == ParseError::Kind::Syntax);
  CHECK(kind_of("(x1 + x2)^2") == ParseError::Kind::Syntax);
  CHECK(kind_of("x1^2*x2^40*x3^30") == ParseError::Kind::DegreeCap);
}

TEST_CASE("scalar field arithmetic") {
  Scalar r2 = Scalar::sqrt_of(2);
  CHECK((r2 * r2).is_rational());
  CHECK(r2 * r2 == Scalar(2));
  CHECK((r2 - r2).is_zero());
  CHECK_THROWS_AS(r2 + Scalar::sqrt_of(3), FieldMismatch);
  CHECK((Scalar(1) + r2).inverse() * (Scalar(1) + r2) == Scalar(1));
  CHECK((Scalar(1) - r2).sign() < 0);
}

TEST_CASE("hessian determinant") {
  CHECK(hessian_det(parse_polynomial("x1^2 + x2^2 + x3^2")) == Polynomial::constant(3, Scalar(8)));
  CHECK(hessian_det(parse_polynomial("x1^3 + x1^2*x2 + x1^4*x3")).is_zero());
  CHECK(hessian_det(parse_polynomial("x1^2*x2^2")).is_zero());
}

TEST_CASE("linear composition is exact and invertible") {
  auto phi = parse_polynomial("x1^2*x2 + x3^3 - 2*x1*x3");
  LinearMap a(Matrix{{Scalar(1), Scalar(2), Scalar(0)}, {Scalar(0), Scalar(1), Scalar(-1)},
                     {Scalar(3), Scalar(0), Scalar(1)}});
  auto g = compose_linear(phi, a);
  CHECK(compose_linear(g, a.inverse()) == phi);
  CHECK((a * a.inverse()) == LinearMap::identity(3));
  CHECK_THROWS_AS(LinearMap(Matrix{{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}}), SingularMatrix);
}

TEST_CASE("real roots with multiplicity") {
  // (t-1)^3 (t+2) (t^2-2)
  auto q = parse_polynomial("x1 - 1", 1).pow(3) * parse_polynomial("x1 + 2", 1) * parse_polynomial("x1^2 - 2", 1);
  auto roots = real_root_multiplicities(q);
  REQUIRE(roots.size() == 4);
  CHECK(roots[0].exact == Rational(-2));
  CHECK(!roots[1].exact);
  CHECK(roots[1].approx() == doctest::Approx(-1.41421356));
  CHECK(roots[2].exact == Rational(1));
  CHECK(roots[2].multiplicity == 3);
  CHECK(!roots[3].exact);
  auto r = real_root_multiplicities(parse_polynomial("3*x1 - 2", 1).pow(2) * parse_polynomial("x1^2 + 1", 1));
  REQUIRE(r.size() == 1);
  CHECK(r[0].exact == Rational(2, 3));
  CHECK(r[0].multiplicity == 2);
}
