#pragma once

#include <array>
#include <vector>

#include "zerocurv/newton.hpp"

namespace zerocurv::testing {

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

/// min c.x subject to A x = b, x >= 0. Dense two-phase simplex with Bland's
/// rule, exact over Q.
LpResult simplex_min(std::vector<std::vector<Rational>> a, std::vector<Rational> b, const std::vector<Rational>& c);

/// t in conv(points) + cone(e_1..e_dim), decided by LP feasibility.
bool lp_contains(const SupportSet& s, const std::array<Rational, 3>& t);

/// min t with (t,...,t) in conv(points) + cone(e_i).
Rational lp_distance(const SupportSet& s);

}  // namespace zerocurv::testing
