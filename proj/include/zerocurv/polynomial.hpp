#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "zerocurv/scalar.hpp"

namespace zerocurv {

/// Total-degree cap on analyzed polynomials.
inline constexpr int kMaxDegree = 64;

/// Exponent triple (a1, a2, a3); unused trailing slots stay zero.
struct Monomial {
  std::array<int, 3> e{0, 0, 0};

  int total() const { return e[0] + e[1] + e[2]; }
  int operator[](std::size_t i) const { return e[i]; }
  int& operator[](std::size_t i) { return e[i]; }

  friend Monomial operator+(const Monomial& l, const Monomial& r) {
    return {{l.e[0] + r.e[0], l.e[1] + r.e[1], l.e[2] + r.e[2]}};
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded-lex order: total degree ascending, then x1-exponent descending,
/// then x2-exponent descending. Printing follows this order.
struct GradedLex {
  bool operator()(const Monomial& l, const Monomial& r) const {
    int tl = l.total();
    int tr = r.total();
    if (tl != tr) return tl < tr;
    if (l.e[0] != r.e[0]) return l.e[0] > r.e[0];
    return l.e[1] > r.e[1];
  }
};

/// Sparse polynomial in 1, 2 or 3 variables over Q or Q(sqrt(D)).
///
/// No zero coefficient is ever stored, so two polynomials are equal exactly
/// when their term maps are equal.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Scalar, GradedLex>;

  explicit Polynomial(int nvars = 3);
  Polynomial(int nvars, Terms terms);

  static Polynomial constant(int nvars, const Scalar& c);
  /// x_{var+1}, with var zero-based.
  static Polynomial variable(int nvars, int var);
  static Polynomial monomial(int nvars, const Monomial& m, const Scalar& c = Scalar(1));

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of m (zero when absent).
  Scalar coefficient(const Monomial& m) const;
  Scalar constant_term() const { return coefficient(Monomial{}); }

  int degree() const;
  int degree_in(int var) const;
  /// Lowest total degree among the terms; -1 for the zero polynomial.
  int order() const;
  bool depends_on(int var) const { return degree_in(var) > 0; }
  /// Radicand shared by all coefficients (0 = rational).
  std::int64_t radicand() const;
  bool is_rational() const { return radicand() == 0; }

  /// Same terms reinterpreted with a different variable count.
  /// Throws if a dropped variable is present.
  Polynomial with_nvars(int nvars) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& c);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial l, const Polynomial& r) { return l += r; }
  friend Polynomial operator-(Polynomial l, const Polynomial& r) { return l -= r; }
  friend Polynomial operator*(const Polynomial& l, const Polynomial& r);
  friend Polynomial operator*(Polynomial l, const Scalar& c) { return l *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial r) { return r *= c; }
  friend bool operator==(const Polynomial& l, const Polynomial& r) {
    return l.nvars_ == r.nvars_ && l.terms_ == r.terms_;
  }
  friend bool operator!=(const Polynomial& l, const Polynomial& r) { return !(l == r); }

  Polynomial pow(int k) const;

  Scalar evaluate(std::span<const Scalar> point) const;
  double evaluate(std::span<const double> point) const;

  /// Canonical text in the input grammar. Q(sqrt(D)) coefficients print as
  /// "(a+b*sqrt(D))", which the parser does not accept.
  std::string str() const;

  /// Adds c*m, dropping the term if it cancels.
  void add_term(const Monomial& m, const Scalar& c);

 private:
  void check_compatible(const Polynomial& o) const;

  int nvars_;
  Terms terms_;
};

Polynomial derivative(const Polynomial& p, int var);

/// Replaces x_{var+1} by psi everywhere in p.
Polynomial substitute(const Polynomial& p, int var, const Polynomial& psi);

/// 3x3 symbolic Hessian determinant. Requires nvars == 3.
Polynomial hessian_det(const Polynomial& p);

/// Symmetric matrix of second partial derivatives (row-major, 3x3 for nvars == 3).
std::vector<std::vector<Polynomial>> hessian_matrix(const Polynomial& p);

/// Homogeneous part of total degree k.
Polynomial homogeneous_part(const Polynomial& p, int k);

/// Substitutes images[i] for x_{i+1}. All images share one variable count,
/// which becomes the variable count of the result.
Polynomial compose(const Polynomial& p, std::span<const Polynomial> images);

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

}  // namespace zerocurv
