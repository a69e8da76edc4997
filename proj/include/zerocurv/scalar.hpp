#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace zerocurv {

using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown when two values from incompatible fields meet in one operation.
class FieldMismatch : public std::runtime_error {
 public:
  explicit FieldMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p" or "p/q" (optional leading sign) into a normalized rational.
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// "p" or "p/q", lowest terms, sign on the numerator.
std::string to_string(const Rational& q);

/// Square-free part of a positive integer, computed by trial division.
/// Returns (square_free, root) with n = square_free * root^2.
std::pair<Integer, Integer> square_free_split(const Integer& n);

/// Element a + b*sqrt(D) of Q(sqrt(D)), D a square-free integer > 1.
///
/// Pure rationals carry D = 0. Whenever b becomes zero the value collapses
/// back to D = 0, so equality is structural.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& a) : a_(a) { a_.canonicalize(); }  // NOLINT
  Scalar(const Rational& a, const Rational& b, std::int64_t radicand);

  static Scalar sqrt_of(std::int64_t radicand);

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  std::int64_t radicand() const { return d_; }

  bool is_rational() const { return d_ == 0; }
  bool is_zero() const { return d_ == 0 && sgn(a_) == 0; }
  bool is_one() const { return d_ == 0 && a_ == 1; }

  /// Sign of the real number a + b*sqrt(D).
  int sign() const;
  double to_double() const;
  /// Requires is_rational().
  const Rational& as_rational() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;
  Scalar conjugate() const;

  friend Scalar operator+(Scalar l, const Scalar& r) { return l += r; }
  friend Scalar operator-(Scalar l, const Scalar& r) { return l -= r; }
  friend Scalar operator*(Scalar l, const Scalar& r) { return l *= r; }
  friend Scalar operator/(Scalar l, const Scalar& r) { return l /= r; }

  friend bool operator==(const Scalar& l, const Scalar& r) {
    return l.d_ == r.d_ && l.a_ == r.a_ && l.b_ == r.b_;
  }
  friend bool operator!=(const Scalar& l, const Scalar& r) { return !(l == r); }
  /// Real-number ordering.
  friend bool operator<(const Scalar& l, const Scalar& r) { return (l - r).sign() < 0; }

  /// Rational values print as "p/q"; others as "(a+b*sqrt(D))".
  std::string str() const;

 private:
  void normalize();
  static std::int64_t join(std::int64_t d1, std::int64_t d2);

  Rational a_{0};
  Rational b_{0};
  std::int64_t d_ = 0;
};

/// Common field radicand of two values (0 if both rational). Throws FieldMismatch.
std::int64_t common_radicand(std::int64_t d1, std::int64_t d2);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace zerocurv
