#include <doctest.h>

#include "support/lp_oracle.hpp"
#include "support/random.hpp"

using namespace zerocurv;
using namespace zerocurv::testing;

TEST_CASE("simplex on small programs") {
  // min -x - y  s.t. x + y + s = 4, x + 3y + t = 6
  auto r = simplex_min({{1, 1, 1, 0}, {1, 3, 0, 1}}, {4, 6}, {-1, -1, 0, 0});
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.value == -4);
  auto inf = simplex_min({{1, 1}}, {-1}, {0, 0});
  CHECK(inf.status == LpResult::Status::Infeasible);
  auto unb = simplex_min({{1, -1}}, {0}, {-1, 0});
  CHECK(unb.status == LpResult::Status::Unbounded);
}

TEST_CASE("oracle agrees with the facet description on a few supports") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    SupportSet s = random_support(rng);
    NewtonPolyhedron n = build_polyhedron(s);
    CHECK(newton_distance(n) == lp_distance(s));
    for (int k = 0; k < 50; ++k) {
      auto t = random_point(rng);
      CHECK(n.contains(t) == lp_contains(s, t));
    }
  }
  SupportSet two;
  two.dim = 2;
  two.points = {{0, 2, 0}, {3, 0, 0}};
  CHECK(lp_distance(two) == Rational(6, 5));
}
