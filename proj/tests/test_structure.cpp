#include <doctest.h>

#include "zerocurv/parse.hpp"
#include "zerocurv/structure.hpp"

using namespace zerocurv;

TEST_CASE("OneVar and TwoVar via kernel directions") {
  auto d1 = decompose(parse_polynomial("x1 + 2*x2 - x3").pow(4));
  CHECK(d1.kind == DecompositionCase::OneVar);
  CHECK(d1.nu == 4);
  CHECK(verify_decomposition(parse_polynomial("x1 + 2*x2 - x3").pow(4), d1));
  auto d2 = decompose(parse_polynomial("x1^2*x3^2"));
  CHECK(d2.kind == DecompositionCase::TwoVar);
  auto d3 = decompose(parse_polynomial("x1 + x3").pow(2) + parse_polynomial("x2 - x3").pow(3));
  CHECK(d3.kind == DecompositionCase::TwoVar);
}

TEST_CASE("form case") {
  auto phi = parse_polynomial("x1^3 + x1^2*x2 + x1^4*x3");
  auto d = decompose(phi);
  CHECK(d.kind == DecompositionCase::Form);
  CHECK(d.nus[0] == 3);
  CHECK(d.nus[1] == 2);
  CHECK(d.nus[2] == 4);
  CHECK(verify_decomposition(phi, d));

  auto psi = parse_polynomial("x1^2 + x1^3*x2 + x1^3*x3 + x1^4*x3");
  auto e = decompose(psi);
  CHECK(e.kind == DecompositionCase::Form);
  CHECK(e.nus[0] == 2);
}

TEST_CASE("form case survives a linear change of variables") {
  auto phi = parse_polynomial("x1^3 + x1^2*x2 + x1^4*x3");
  LinearMap a(Matrix{{Scalar(1), Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1), Scalar(2)},
                     {Scalar(-1), Scalar(0), Scalar(1)}});
  auto g = compose_linear(phi, a);
  auto d = decompose(g);
  CHECK(d.kind == DecompositionCase::Form);
  CHECK(verify_decomposition(g, d));
}

TEST_CASE("structure errors") {
  try {
    decompose(parse_polynomial("x1^2 + x2^2 + x3^2"));
    FAIL("expected NotDegenerate");
  } catch (const StructureError& e) {
    CHECK(e.kind() == StructureError::Kind::NotDegenerate);
  }
  auto rep = hessian_vanishes(parse_polynomial("x1^2 + x2^2 + x3^2"));
  CHECK(!rep.vanishes);
  REQUIRE(rep.witness);
  CHECK(rep.witness_value == Rational(8));
  try {
    decompose(parse_polynomial("x1 + x2^2"));
    FAIL("expected Precondition");
  } catch (const StructureError& e) {
    CHECK(e.kind() == StructureError::Kind::Precondition);
  }
}
