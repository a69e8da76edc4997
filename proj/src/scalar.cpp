#include "zerocurv/scalar.hpp"

#include <cmath>
#include <ostream>

namespace zerocurv {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  bool digit_before = false;
  bool digit_after = false;
  for (std::size_t k = i; k < s.size(); ++k) {
    char c = s[k];
    if (c >= '0' && c <= '9') {
      (seen_slash ? digit_after : digit_before) = true;
    } else if (c == '/' && !seen_slash) {
      seen_slash = true;
    } else {
      throw std::invalid_argument("not a rational literal: " + s);
    }
  }
  if (!digit_before || (seen_slash && !digit_after)) {
    throw std::invalid_argument("not a rational literal: " + s);
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::pair<Integer, Integer> square_free_split(const Integer& n) {
  if (n <= 0) throw std::invalid_argument("square_free_split needs a positive integer");
  Integer rest = n;
  Integer free = 1;
  Integer root = 1;
  for (unsigned long p = 2; p < 1000000UL; p += (p == 2 ? 1 : 2)) {
    Integer pp = Integer(p) * p;
    if (pp > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
      rest /= p;
      if (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
        rest /= p;
        root *= p;
      } else {
        free *= p;
      }
    }
  }
  // Whatever survives trial division is either prime, a square, or a product
  // of large primes; only the square case can be detected cheaply.
  if (rest > 1) {
    if (mpz_perfect_square_p(rest.get_mpz_t()) != 0) {
      Integer r;
      mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
      root *= r;
    } else {
      free *= rest;
    }
  }
  return {free, root};
}

std::int64_t common_radicand(std::int64_t d1, std::int64_t d2) {
  if (d1 == 0) return d2;
  if (d2 == 0 || d1 == d2) return d1;
  throw FieldMismatch("scalars from Q(sqrt(" + std::to_string(d1) + ")) and Q(sqrt(" +
                      std::to_string(d2) + ")) cannot be combined");
}

std::int64_t Scalar::join(std::int64_t d1, std::int64_t d2) { return common_radicand(d1, d2); }

Scalar::Scalar(const Rational& a, const Rational& b, std::int64_t radicand)
    : a_(a), b_(b), d_(radicand) {
  a_.canonicalize();
  b_.canonicalize();
  if (d_ < 0) throw std::invalid_argument("negative radicand");
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
    d_ = 0;
  }
  normalize();
}

Scalar Scalar::sqrt_of(std::int64_t radicand) {
  if (radicand < 0) throw std::invalid_argument("sqrt of negative number");
  auto [free, root] = square_free_split(Integer(static_cast<long>(radicand)));
  if (free == 1) return Scalar(Rational(root));
  return Scalar(Rational(0), Rational(root), free.get_si());
}

void Scalar::normalize() {
  if (sgn(b_) == 0) d_ = 0;
  if (d_ == 0) b_ = 0;
}

int Scalar::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (d_ == 0 || sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with b^2 D
  Rational lhs = a_ * a_;
  Rational rhs = b_ * b_ * Rational(static_cast<long>(d_));
  int c = cmp(lhs, rhs);
  return c > 0 ? sa : (c < 0 ? sb : 0);
}

double Scalar::to_double() const {
  double v = a_.get_d();
  if (d_ != 0) v += b_.get_d() * std::sqrt(static_cast<double>(d_));
  return v;
}

const Rational& Scalar::as_rational() const {
  if (d_ != 0) throw FieldMismatch("expected a rational scalar, got " + str());
  return a_;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  d_ = join(d_, o.d_);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  d_ = join(d_, o.d_);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (d_ == 0 && o.d_ == 0) {
    a_ *= o.a_;
    return *this;
  }
  std::int64_t d = join(d_, o.d_);
  Rational na = a_ * o.a_ + b_ * o.b_ * Rational(static_cast<long>(d));
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  d_ = d;
  normalize();
  return *this;
}

Scalar Scalar::conjugate() const {
  Scalar r = *this;
  r.b_ = -r.b_;
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (d_ == 0) return Scalar(Rational(1) / a_);
  Rational norm = a_ * a_ - b_ * b_ * Rational(static_cast<long>(d_));
  return Scalar(a_ / norm, -b_ / norm, d_);
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.d_ == 0) {
    if (sgn(o.a_) == 0) throw std::domain_error("division by zero");
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string Scalar::str() const {
  if (d_ == 0) return to_string(a_);
  std::string s = "(";
  if (sgn(a_) != 0) s += to_string(a_);
  Rational b = b_;
  if (sgn(a_) != 0) s += (sgn(b) < 0 ? "-" : "+");
  else if (sgn(b) < 0) s += "-";
  b = abs(b);
  if (b != 1) s += to_string(b) + "*";
  s += "sqrt(" + std::to_string(d_) + "))";
  return s;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace zerocurv
