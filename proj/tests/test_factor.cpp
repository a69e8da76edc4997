#include <doctest.h>

#include "zerocurv/adapt.hpp"
#include "zerocurv/factor.hpp"
#include "zerocurv/parse.hpp"

using namespace zerocurv;

namespace {
Polynomial p2(const char* s) { return parse_polynomial(s, 2); }
}  // namespace

TEST_CASE("exact division") {
  auto q = exact_divide(p2("x1^2 - x2^2"), p2("x1 + x2"));
  REQUIRE(q);
  CHECK(*q == p2("x1 - x2"));
  CHECK(!exact_divide(p2("x1^2 + x2^2"), p2("x1 + x2")));
  CHECK(!exact_divide(p2("x1"), p2("x2")));
}

TEST_CASE("bivariate gcd") {
  Polynomial a = p2("x2 - x1^2");
  Polynomial b = p2("x1 + x2 + 1");
  Polynomial c = p2("x1*x2 - 3");
  CHECK(gcd(a * b, a * c) == gcd(a, a));
  CHECK(gcd(a * b, a * c) == p2("x1^2 - x2"));
  CHECK(gcd(b, c).is_constant());
  CHECK(gcd(p2("x1^3"), p2("x1^2*x2")) == p2("x1^2"));
  CHECK(gcd(Polynomial(2), c) == p2("x1*x2 - 3"));
}

TEST_CASE("square-free layers") {
  Polynomial a = p2("x2 - x1^2");
  Polynomial b = p2("x1 + 1");
  auto layers = square_free_layers(a.pow(3) * b * 5);
  REQUIRE(layers.size() == 2);
  CHECK(layers[0].second == 1);
  CHECK(layers[0].first == b);
  CHECK(layers[1].second == 3);
  CHECK(layers[1].first == p2("x1^2 - x2"));
}

TEST_CASE("smooth powers at the origin") {
  auto sp = smooth_power_at_origin(p2("2*x1 + x2 - x1^2 - x2^2").pow(2) * p2("1 + x1"));
  REQUIRE(sp);
  CHECK(sp->multiplicity == 2);
  CHECK(sp->factor.pow(2) * sp->cofactor == p2("2*x1 + x2 - x1^2 - x2^2").pow(2) * p2("1 + x1"));
  CHECK(!smooth_power_at_origin(p2("x2^2 - x1^3")));
  CHECK(!smooth_power_at_origin(p2("x2 - x1^2")));
  CHECK(!smooth_power_at_origin(p2("x1^2*x2^2")));
  CHECK(!smooth_power_at_origin(p2("x2 - x1^2").pow(2) * p2("x1")));
}

TEST_CASE("a power of a conic branch adapts through the smooth factor") {
  Polynomial psi = p2("x1 + 2*x2 - x1^2 + 2*x1*x2 - x2^2").pow(2);
  auto r = adapt_2d(psi);
  REQUIRE(r.chart.smooth);
  CHECK(r.h == 2);
  CHECK(r.nu == 0);
  CHECK(r.chart.smooth->multiplicity == 2);
  CHECK(!r.chart.linear_only());
  // a polynomial branch still terminates with triangular steps
  auto s = adapt_2d(p2("x2 - x1^2").pow(2));
  CHECK(!s.chart.smooth);
  CHECK(s.h == 2);
}
