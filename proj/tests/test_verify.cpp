#include <doctest.h>

#include <cmath>
#include <sstream>

#include "zerocurv/parse.hpp"
#include "zerocurv/verify/decay.hpp"
#include "zerocurv/verify/sublevel.hpp"

using namespace zerocurv;
using namespace zerocurv::verify;

namespace {

Polynomial p3(const char* s) { return parse_polynomial(s, 3); }

DecaySamples synthetic(double (*f)(double)) {
  DecaySamples s;
  for (int i = 0; i <= 48; ++i) {
    double l = 64.0 * std::exp2(i / 4.0);
    s.samples.push_back({l, Complex(f(l), 0.0), 0.0, true, ""});
  }
  return s;
}

}  // namespace

TEST_CASE("bump and its transform") {
  Bump b;
  CHECK(b.integral() == doctest::Approx(0.4439938161680776).epsilon(1e-13));
  CHECK(b(0.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(b(1.0) == 0.0);
  // high-precision reference values
  CHECK(b.fourier(64.0) == doctest::Approx(-5.8499e-6).epsilon(1e-4));
  CHECK(b.fourier(400.0) == doctest::Approx(-1.3542e-11).epsilon(1e-4));
  CHECK(std::fabs(b.fourier(2048.0)) < 1e-16);
  Bump half(0.5);
  CHECK(half.integral() == doctest::Approx(0.5 * b.integral()));
}

TEST_CASE("oscillatory integral against brute force") {
  for (const char* s : {"x1^2", "x1^3", "x1^2*x2^2", "x1^3 + x1^2*x2 + x1^4*x3"}) {
    OscillatoryPlan plan(p3(s), BumpSpec{});
    for (std::array<double, 4> xi : {std::array<double, 4>{0, 0, 0, 64}, {3, -2, 1, 64}, {0, 0, 0, 256}}) {
      auto v = eval_oscillatory(plan, xi);
      Complex ref = brute_force_oscillatory(plan, xi, 1'000'000);
      CAPTURE(s);
      CHECK(std::abs(v.value - ref) <= 0.01 * std::abs(ref) + 1e-9);
    }
  }
  SUBCASE("phase zero gives the bump integral") {
    OscillatoryPlan plan(p3("x1^2"), BumpSpec{});
    auto v = eval_oscillatory(plan, {0, 0, 0, 0});
    CHECK(std::abs(v.value - BumpSpec{}.integral()) < 1e-12);
  }
  SUBCASE("separable phase: idle axis contributes its bump integral") {
    OscillatoryPlan three(p3("x1^3"), BumpSpec{});
    double one = Bump().integral();
    auto v = eval_oscillatory(three, {0, 0, 0, 100});
    auto brute = brute_force_oscillatory(three, {0, 0, 0, 100}, 200'000);
    CHECK(std::abs(v.value - brute) < 1e-4 * one * one);
  }
}

TEST_CASE("decay fits on synthetic samples") {
  auto exact = synthetic([](double l) { return std::pow(l, -0.5); });
  auto f = fit_decay(exact, 0);
  CHECK(std::fabs(f.exponent + 0.5) < 1e-12);
  CHECK(f.window[1] == doctest::Approx(262144.0));

  auto logged = synthetic([](double l) { return std::pow(l, -0.5) * std::log(l); });
  CHECK(fit_decay(logged, 1).exponent == doctest::Approx(-0.5).epsilon(1e-10));
  double nolog = fit_decay(logged, 0).exponent;
  CHECK(nolog > -0.5);
  CHECK(nolog < -0.40);

  DecaySamples few;
  few.samples.resize(5, DecaySample{100.0, Complex(1, 0), 0.0, true, ""});
  CHECK_THROWS_AS(fit_decay(few, 0), FitError);

  auto noisy = synthetic([](double l) { return std::pow(l, -0.5) * (1.5 + std::sin(3.0 * std::log(l))); });
  try {
    fit_decay(noisy, 0);
    FAIL("expected NoLinearWindow");
  } catch (const FitError& e) {
    CHECK(e.kind() == FitError::Kind::NoLinearWindow);
  }
  CHECK(envelope_fit(noisy).exponent < 0.0);
}

TEST_CASE("decay scan of x1^3 traces lambda^(-1/3)") {
  OscillatoryPlan plan(p3("x1^3"), BumpSpec{});
  auto s = decay_scan(plan, {0, 0, 0, 1});
  CHECK(s.samples.size() == 49);
  for (std::size_t i = 1; i < s.samples.size(); ++i) CHECK(s.samples[i].lambda > s.samples[i - 1].lambda);
  CHECK(s.accepted().size() >= 8);
  CHECK(fit_decay(s, 0).exponent == doctest::Approx(-1.0 / 3).epsilon(0.05 * 3));
  std::ostringstream os;
  write_decay_csv(os, s);
  CHECK(os.str().rfind("lambda,re,im,abs,err\n", 0) == 0);
}

TEST_CASE("non-stationary direction decays super-polynomially") {
  OscillatoryPlan plan(p3("x1^2*x2^2"), BumpSpec{});
  auto s = decay_scan(plan, {1, 0, 0, 0}, {64, 4096, 4, {}});
  CHECK(s.superpolynomial());
  CHECK(std::isinf(envelope_fit(s).exponent));
}

TEST_CASE("cone directions") {
  auto d = cone_directions();
  REQUIRE(d.size() == 8);
  for (const auto& v : d) {
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
    CHECK(n == doctest::Approx(1.0));
    CHECK(std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) <= 0.1 * v[3] + 1e-15);
  }
  CHECK(cone_directions() == d);
}

TEST_CASE("sublevel measures against exact values") {
  Box cube = Box::cube(1.0);
  CHECK(sublevel_measure(p3("x1"), cube, {0.1}).points[0].measure == doctest::Approx(0.8));
  for (double e : {1e-2, 1e-6}) {
    CHECK(sublevel_measure(p3("x1^2"), cube, {e}).points[0].measure == doctest::Approx(2 * std::sqrt(e) * 4));
  }
  // |x1 x2| <= s on [-1,1]^2 has area 4 s (1 - log s)
  double e = 1e-6;
  double s = std::sqrt(e);
  auto m = sublevel_measure(p3("x1^2*x2^2"), cube, {e}).points[0];
  CHECK(m.accepted);
  CHECK(std::fabs(m.measure - 8 * s * (1 - std::log(s))) < 2.0 * m.ci);
}

TEST_CASE("sublevel samples are monotone and deterministic") {
  auto grid = epsilon_grid(0x1p-30, 0x1p-10, 1);
  auto a = sublevel_measure(p3("x1^2 + x2^3"), Box{}, grid);
  auto b = sublevel_measure(p3("x1^2 + x2^3"), Box{}, grid);
  REQUIRE(a.points.size() == grid.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].measure == b.points[i].measure);
    CHECK(a.points[i].ci == b.points[i].ci);
    CHECK(a.points[i].measure <= Box{}.volume());
    if (i > 0) CHECK(a.points[i].measure >= a.points[i - 1].measure);
    if (a.points[i].accepted) CHECK(a.points[i].ci < 0.05 * a.points[i].measure);
  }
  std::ostringstream os;
  write_sublevel_csv(os, a);
  CHECK(os.str().rfind("epsilon,measure,ci\n", 0) == 0);
}

TEST_CASE("integrability probe") {
  ProbeOptions o;
  o.log_flag = 1;
  o.height = 2.0;
  auto conv = integrability_probe(p3("x1^2*x2^2"), 3.0, o);
  CHECK(conv.verdict == Verdict::Converges);
  CHECK(conv.a == doctest::Approx(0.5).epsilon(0.2));
  auto boundary = integrability_probe(p3("x1^2*x2^2"), 2.0, o);
  CHECK((boundary.verdict == Verdict::Diverges || boundary.boundary));
  CHECK(integrability_probe(p3("x1^2*x2^2"), 1.5, o).verdict == Verdict::Diverges);

  ProbeOptions q;
  q.height = 4.0;
  CHECK(integrability_probe(p3("x1^4"), 5.0, q).verdict == Verdict::Converges);
  auto at_h = integrability_probe(p3("x1^4"), 4.0, q);
  CHECK(at_h.boundary);
  CHECK(at_h.verdict == Verdict::Inconclusive);
  CHECK_THROWS(integrability_probe(p3("x1^4"), 0.0, q));
}
