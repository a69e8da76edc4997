#pragma once

#include <array>
#include <vector>

#include "zerocurv/polynomial.hpp"
#include "zerocurv/verify/bump.hpp"
#include "zerocurv/verify/quadrature.hpp"

namespace zerocurv::verify {

/// Tensor bump eta(x) = b_r(x1) b_r(x2) b_r(x3) centered at the origin.
struct BumpSpec {
  double radius = 1.0;
  double amplitude_at_origin() const;
  double integral() const;
};

/// Polynomial with double coefficients for fast evaluation.
struct NumericPoly {
  struct Term {
    std::array<int, 3> e;
    double c;
  };
  std::vector<Term> terms;

  static NumericPoly from(const Polynomial& p);
  double operator()(const std::array<double, 3>& x) const;
  bool depends_on(int var) const;
  /// Coefficients (lowest degree first) of the univariate restriction in
  /// `var`, the other variables fixed by `x`.
  std::vector<double> restrict_to(int var, const std::array<double, 3>& x) const;
};

/// The integral split into analytic and numeric factors.
///
/// Variables in which the phase is affine (once the others are fixed) are
/// integrated in closed form through the bump transform; the remaining
/// variables fall into independent groups that are integrated by nested
/// adaptive Filon rules.
class OscillatoryPlan {
 public:
  OscillatoryPlan(const Polynomial& phi, BumpSpec bump);

  struct Group {
    std::vector<int> vars;           // integrated numerically, inner first
    NumericPoly phase;               // phi restricted to these variables
    std::vector<int> affine_vars;    // transform factors depending on the group
  };

  const std::vector<int>& affine_vars() const { return affine_; }
  const std::vector<Group>& groups() const { return groups_; }
  const std::vector<NumericPoly>& affine_coefficients() const { return coeff_; }
  const BumpSpec& bump() const { return bump_; }

 private:
  friend struct Evaluator;
  BumpSpec bump_;
  Bump b_;
  std::vector<int> affine_;
  std::array<NumericPoly, 3> coeff_all_;
  std::vector<NumericPoly> coeff_;  // d phi / d x_s for s in affine_
  std::vector<Group> groups_;
};

struct OscillatoryOptions {
  /// absolute tolerance; <= 0 picks 1e-7 * int eta
  double abs_tol = 0.0;
  std::size_t budget = 30'000'000;
};

struct OscillatoryValue {
  Complex value{0, 0};
  double error = 0.0;
};

/// J(xi) = int e^{i(xi4 phi(x) + xi1 x1 + xi2 x2 + xi3 x3)} eta(x) dx.
/// Throws ToleranceNotMet when the budget is exhausted.
OscillatoryValue eval_oscillatory(const OscillatoryPlan& plan, const std::array<double, 4>& xi,
                                  const OscillatoryOptions& opt = {});

OscillatoryValue eval_oscillatory(const Polynomial& phi, const BumpSpec& bump, const std::array<double, 4>& xi,
                                  const OscillatoryOptions& opt = {});

/// Midpoint-rule reference on the numerically integrated variables, for
/// cross-checking at moderate frequencies (about `nodes` samples in total).
Complex brute_force_oscillatory(const OscillatoryPlan& plan, const std::array<double, 4>& xi, long nodes);

}  // namespace zerocurv::verify
