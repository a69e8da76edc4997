#pragma once

#include <random>

#include "zerocurv/linear_map.hpp"
#include "zerocurv/newton.hpp"
#include "zerocurv/polynomial.hpp"

namespace zerocurv::testing {

using Rng = std::mt19937_64;

inline long uniform_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational random_rational(Rng& rng, long max_num = 5, long max_den = 4) {
  Rational q(uniform_int(rng, -max_num, max_num), uniform_int(rng, 1, max_den));
  q.canonicalize();
  return q;
}

inline Rational random_nonzero(Rng& rng, long max_num = 5, long max_den = 4) {
  for (;;) {
    Rational q = random_rational(rng, max_num, max_den);
    if (sgn(q) != 0) return q;
  }
}

inline LinearMap random_invertible(Rng& rng, int n = 3) {
  for (;;) {
    Matrix m(n, Vector(n));
    for (auto& row : m) {
      for (auto& e : row) e = Scalar(random_rational(rng, 3, 3));
    }
    if (!determinant(m).is_zero()) return LinearMap(m);
  }
}

/// Random univariate polynomial in x1 (as a 3-variable polynomial) with
/// terms of degree lo..hi; at least one term.
inline Polynomial random_in_x1(Rng& rng, int lo, int hi) {
  Polynomial p(3);
  while (p.is_zero()) {
    for (int k = lo; k <= hi; ++k) {
      if (uniform_int(rng, 0, 2) == 0) continue;
      p.add_term(Monomial{{k, 0, 0}}, Scalar(random_nonzero(rng)));
    }
  }
  return p;
}

enum class Shape { OneVar, TwoVar, Form };

/// phi(x) of the given shape, order >= 2, total degree <= max_degree.
inline Polynomial random_canonical(Rng& rng, Shape shape, int max_degree = 8) {
  switch (shape) {
    case Shape::OneVar:
      return random_in_x1(rng, 2, max_degree);
    case Shape::TwoVar: {
      Polynomial p(3);
      while (!p.depends_on(0) || !p.depends_on(1)) {
        p = Polynomial(3);
        for (int a = 0; a <= max_degree; ++a) {
          for (int b = 0; a + b <= max_degree; ++b) {
            if (a + b < 2 || uniform_int(rng, 0, 4) != 0) continue;
            p.add_term(Monomial{{a, b, 0}}, Scalar(random_nonzero(rng)));
          }
        }
      }
      return p;
    }
    case Shape::Form: {
      Polynomial q1 = random_in_x1(rng, 2, max_degree);
      Polynomial q2 = random_in_x1(rng, 1, max_degree - 1);
      Polynomial q3 = random_in_x1(rng, 1, max_degree - 1);
      return q1 + q2 * Polynomial::variable(3, 1) + q3 * Polynomial::variable(3, 2);
    }
  }
  return Polynomial(3);
}

/// Random coefficients on every monomial of degree 2..max_degree.
inline Polynomial random_generic(Rng& rng, int max_degree = 4) {
  Polynomial p(3);
  for (int a = 0; a <= max_degree; ++a) {
    for (int b = 0; a + b <= max_degree; ++b) {
      for (int c = 0; a + b + c <= max_degree; ++c) {
        if (a + b + c < 2) continue;
        p.add_term(Monomial{{a, b, c}}, Scalar(random_nonzero(rng, 9, 1)));
      }
    }
  }
  return p;
}

inline SupportSet random_support(Rng& rng, int dim = 3, int max_points = 12, long max_entry = 12) {
  SupportSet s;
  s.dim = dim;
  int k = static_cast<int>(uniform_int(rng, 1, max_points));
  while (static_cast<int>(s.points.size()) < k) {
    LatticePoint p{0, 0, 0};
    for (int i = 0; i < dim; ++i) p[i] = uniform_int(rng, 0, max_entry);
    if (p == LatticePoint{0, 0, 0}) continue;
    s.points.push_back(p);
  }
  std::sort(s.points.begin(), s.points.end());
  s.points.erase(std::unique(s.points.begin(), s.points.end()), s.points.end());
  return s;
}

inline std::array<Rational, 3> random_point(Rng& rng, int dim = 3, long max_entry = 14) {
  std::array<Rational, 3> t{0, 0, 0};
  for (int i = 0; i < dim; ++i) {
    t[i] = Rational(uniform_int(rng, 0, max_entry * 6), uniform_int(rng, 1, 6));
    t[i].canonicalize();
  }
  return t;
}

}  // namespace zerocurv::testing
