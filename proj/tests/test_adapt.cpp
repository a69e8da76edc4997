#include <doctest.h>

#include "zerocurv/adapt.hpp"
#include "zerocurv/parse.hpp"

using namespace zerocurv;

namespace {
Polynomial p2(const char* s) { return parse_polynomial(s, 2); }
Polynomial p3(const char* s) { return parse_polynomial(s, 3); }

Adapted3D run(const Polynomial& phi) { return adapt_3d(phi, decompose(phi)); }
}  // namespace

TEST_CASE("adaptedness in two variables") {
  CHECK(adaptedness_2d(p2("x1^2*x2^2")).adapted);
  CHECK(adaptedness_2d(p2("x1^2*x2^2")).face == FaceKind::Vertex);
  auto a = adaptedness_2d(p2("x2^2 - 2*x1^2*x2 + x1^4"));
  CHECK(!a.adapted);
  CHECK(a.d == Rational(4, 3));
  CHECK(a.m == 2);
  auto b = adaptedness_2d(p2("x1^2 + x2^3"));
  CHECK(b.adapted);
  CHECK(b.m == 1);
}

TEST_CASE("Varchenko substitutions") {
  auto s = varchenko_step_2d(p2("x2^2 - 2*x1^2*x2 + x1^4"));
  CHECK(s.target == 1);
  CHECK(s.m == 2);
  CHECK(s.c == Scalar(1));
  auto t = varchenko_step_2d(p2("x2 - 2*x1").pow(2) + p2("x1^5"));
  CHECK(t.target == 1);
  CHECK(t.m == 1);
  CHECK(t.c == Scalar(2));
  auto u = varchenko_step_2d(p2("x1 - x2^3").pow(2));
  CHECK(u.target == 0);
  CHECK(u.m == 3);
  CHECK(u.c == Scalar(1));
}

TEST_CASE("adapt_2d") {
  auto r = adapt_2d(p2("x2^2 - 2*x1^2*x2 + x1^4"));
  CHECK(r.chart.steps.size() == 1);
  CHECK(r.chart.final_poly == p2("x2^2"));
  CHECK(r.h == 2);
  CHECK(r.nu == 0);
  auto v = adapt_2d(p2("x1^2*x2^2"));
  CHECK(v.chart.steps.empty());
  CHECK(v.nu == 1);
  auto w = adapt_2d(p2("x1^2 + x2^3"));
  CHECK(w.h == Rational(6, 5));
  CHECK(w.nu == 0);
  for (int n = 5; n <= 9; ++n) {
    auto q = adapt_2d(p2("x2 - x1^2").pow(2) + Polynomial::monomial(2, Monomial{{n, 0, 0}}));
    Rational want(2 * n, n + 2);
    want.canonicalize();
    CHECK(q.h == want);
  }
}

TEST_CASE("vertex normalization keeps nu linearly invariant") {
  auto r = adapt_2d(p2("x1 + x2").pow(2) * p2("x1 - x2").pow(2));
  CHECK(r.h == 2);
  CHECK(r.nu == 1);
  CHECK(r.vertex_normalized);
  CHECK(r.final_state.face == FaceKind::Vertex);
  auto s = adapt_2d(p2("x1^2") * p2("x2 - x1^2").pow(2));
  CHECK(s.nu == 1);
  // irrational roots of multiplicity d: nu stays 1, chart untouched
  auto t = adapt_2d(p2("x1^2 - 2*x2^2").pow(2));
  CHECK(t.nu == 1);
  CHECK(!t.vertex_normalized);
}

TEST_CASE("adapt_3d cases") {
  auto a = run(p3("x1^3 + x1^2*x2 + x1^4*x3"));
  CHECK(a.height.kind == HeightCase::FormCase2);
  CHECK(a.height.h == 2);
  REQUIRE(a.height.form2);
  CHECK(a.height.form2->c1 == Scalar(1));
  CHECK(a.height.form2->c2 == Scalar(1));
  CHECK(a.height.form2->c3 == Scalar(0));
  CHECK(!a.chart.final_poly.coefficient(Monomial{{2, 1, 0}}).is_zero());

  auto b = run(p3("x1^2 + x1^3*x2 + x1^3*x3 + x1^4*x3"));
  CHECK(b.height.kind == HeightCase::FormCase1);
  CHECK(b.height.h == 2);

  auto c = run(p3("x1^4"));
  CHECK(c.height.kind == HeightCase::OneVar);
  CHECK(c.height.h == 4);
  CHECK(c.height.nu == 0);

  auto d = run(p3("x1^2*x2^2"));
  CHECK(d.height.kind == HeightCase::TwoVar);
  CHECK(d.height.nu == 1);
  CHECK(apply_chart(p3("x1^2*x2^2"), d.chart.steps) == d.chart.final_poly);

  auto e = run(p3("x1^3 + x1^3*x2 + x1^4*x3"));
  CHECK(e.height.h == 3);
  auto f = run(p3("x1^2 + x1^2*x2 + x1^3*x3"));
  CHECK(f.height.h == 2);
}

TEST_CASE("exponent report rules") {
  auto r = exponent_report(Rational(2), 0, 0);
  CHECK(r.beta == Rational(1, 2));
  CHECK(r.p_s == 2);
  CHECK(r.p_s_status == PsStatus::Exact);
  CHECK(exponent_report(Rational(4), 0, 1).p_s == 4);
  auto s = exponent_report(Rational(12, 7), 0, 0);
  CHECK(s.p_s == Rational(12, 7));
  CHECK(s.p_s_status == PsStatus::Exact);
  CHECK(exponent_report(Rational(6, 5), 0, 1).p_s_status == PsStatus::LowerBoundOnly);
  CHECK(exponent_report(Rational(1), 0, 2).p_s_status == PsStatus::CurvatureCase);
  CHECK(hessian_rank_at_origin(p3("x1^2 + x2^3")) == 1);
  CHECK(hessian_rank_at_origin(p3("x1^3 + x2^4")) == 0);
  CHECK(adapt_2d(p2("x1^3 + x2^4")).h == Rational(12, 7));
}
