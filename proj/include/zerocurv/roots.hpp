#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zerocurv/polynomial.hpp"
#include "zerocurv/scalar.hpp"

namespace zerocurv {

/// Dense univariate polynomial over Q, coefficient i multiplies t^i.
/// Trailing zeros are always trimmed; the zero polynomial is empty.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  /// Requires a rational polynomial with nvars == 1.
  static UPoly from_polynomial(const Polynomial& p);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& operator[](int i) const { return c_[i]; }
  const Rational& leading() const { return c_.back(); }

  Rational evaluate(const Rational& t) const;
  int sign_at(const Rational& t) const { return sgn(evaluate(t)); }
  UPoly derivative() const;
  UPoly monic() const;
  Polynomial to_polynomial() const;

  friend UPoly operator-(const UPoly& l, const UPoly& r);
  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (zero only when both inputs are zero).
UPoly gcd(const UPoly& a, const UPoly& b);

/// Yun's square-free decomposition: q = c * prod s_k^k with each s_k monic,
/// square-free and pairwise coprime. Returns (s_k, k) for deg s_k > 0.
std::vector<std::pair<UPoly, int>> square_free_decomposition(const UPoly& q);

/// Sturm sequence of a square-free polynomial.
std::vector<UPoly> sturm_sequence(const UPoly& p);
/// Number of distinct real roots in (lo, hi] of the polynomial whose Sturm
/// sequence is given.
int sturm_count(const std::vector<UPoly>& seq, const Rational& lo, const Rational& hi);

struct RealRoot {
  int multiplicity = 0;
  /// Present when the root is rational.
  std::optional<Rational> exact;
  /// Isolating interval (lo, hi]; lo == hi == *exact for rational roots.
  Rational lo;
  Rational hi;

  double approx() const;
};

/// Real roots of a nonzero univariate rational polynomial with their
/// multiplicities, sorted ascending. Irrational roots come with isolating
/// intervals of width at most `width`.
std::vector<RealRoot> real_root_multiplicities(const Polynomial& q,
                                               const Rational& width = Rational(1, 1UL << 32));
std::vector<RealRoot> real_root_multiplicities(const UPoly& q,
                                               const Rational& width = Rational(1, 1UL << 32));

}  // namespace zerocurv
