#include "zerocurv/factor.hpp"

#include <stdexcept>

#include "zerocurv/roots.hpp"

namespace zerocurv {

namespace {

bool lex_less(const Monomial& l, const Monomial& r) { return l.e < r.e; }

std::pair<Monomial, Scalar> lex_leading(const Polynomial& p) {
  auto best = p.terms().begin();
  for (auto it = p.terms().begin(); it != p.terms().end(); ++it) {
    if (lex_less(best->first, it->first)) best = it;
  }
  return *best;
}

bool divides(const Monomial& d, const Monomial& m) {
  return d.e[0] <= m.e[0] && d.e[1] <= m.e[1] && d.e[2] <= m.e[2];
}

Polynomial normalized(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p * lex_leading(p).second.inverse();
}

// Coefficient of x2^k as a polynomial in x1 (still bivariate).
Polynomial x2_coefficient(const Polynomial& p, int k) {
  Polynomial out(2);
  for (const auto& [m, c] : p.terms()) {
    if (m.e[1] == k) out.add_term(Monomial{{m.e[0], 0, 0}}, c);
  }
  return out;
}

UPoly as_upoly(const Polynomial& x1_only) {
  std::vector<Rational> c(x1_only.degree_in(0) + 1);
  for (const auto& [m, v] : x1_only.terms()) c[m.e[0]] = v.as_rational();
  return UPoly(std::move(c));
}

Polynomial from_upoly(const UPoly& u) {
  Polynomial out(2);
  for (int i = 0; i <= u.degree(); ++i) out.add_term(Monomial{{i, 0, 0}}, Scalar(u[i]));
  return out;
}

// gcd of the x2-coefficients, a polynomial in x1.
UPoly content(const Polynomial& p) {
  UPoly g;
  for (int k = 0; k <= p.degree_in(1); ++k) {
    Polynomial c = x2_coefficient(p, k);
    if (!c.is_zero()) g = gcd(g, as_upoly(c));
  }
  return g;
}

Polynomial primitive_part(const Polynomial& p) {
  auto q = exact_divide(p, from_upoly(content(p)));
  if (!q) throw std::logic_error("content does not divide");
  return *q;
}

Polynomial pseudo_remainder(Polynomial a, const Polynomial& b) {
  int db = b.degree_in(1);
  Polynomial lb = x2_coefficient(b, db);
  while (!a.is_zero() && a.degree_in(1) >= db) {
    int da = a.degree_in(1);
    Polynomial la = x2_coefficient(a, da);
    a = lb * a - la * Polynomial::monomial(2, Monomial{{0, da - db, 0}}) * b;
  }
  return a;
}

}  // namespace

std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  Polynomial q(a.nvars());
  Polynomial r = a;
  auto [lb, cb] = lex_leading(b);
  Scalar inv = cb.inverse();
  while (!r.is_zero()) {
    auto [lr, cr] = lex_leading(r);
    if (!divides(lb, lr)) return std::nullopt;
    Monomial t{{lr.e[0] - lb.e[0], lr.e[1] - lb.e[1], lr.e[2] - lb.e[2]}};
    Polynomial term = Polynomial::monomial(a.nvars(), t, cr * inv);
    q += term;
    r -= term * b;
  }
  return q;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != 2 || b.nvars() != 2) throw std::invalid_argument("gcd needs bivariate polynomials");
  if (!a.is_rational() || !b.is_rational()) throw std::invalid_argument("gcd needs rational coefficients");
  if (a.is_zero()) return normalized(b);
  if (b.is_zero()) return normalized(a);
  Polynomial c = from_upoly(gcd(content(a), content(b)));
  Polynomial x = primitive_part(a);
  Polynomial y = primitive_part(b);
  if (x.degree_in(1) < y.degree_in(1)) std::swap(x, y);
  while (!y.is_zero() && y.degree_in(1) > 0) {
    Polynomial r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.is_zero() ? r : primitive_part(r);
  }
  // a nonzero y free of x2 is a constant after removing content
  if (!y.is_zero()) return normalized(c);
  return normalized(c * x);
}

std::vector<std::pair<Polynomial, int>> square_free_layers(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("square-free layers of zero");
  // s[j]: product of the factors of multiplicity > j
  std::vector<Polynomial> s;
  Polynomial cur = normalized(p);
  while (!cur.is_constant()) {
    Polynomial g = gcd(gcd(cur, derivative(cur, 0)), derivative(cur, 1));
    s.push_back(*exact_divide(cur, g));
    cur = g;
  }
  std::vector<std::pair<Polynomial, int>> out;
  for (std::size_t j = 0; j < s.size(); ++j) {
    Polynomial f = j + 1 < s.size() ? *exact_divide(s[j], s[j + 1]) : s[j];
    if (!f.is_constant()) out.emplace_back(normalized(f), static_cast<int>(j + 1));
  }
  return out;
}

std::optional<SmoothPower> smooth_power_at_origin(const Polynomial& p) {
  if (p.nvars() != 2 || !p.is_rational() || p.is_zero()) return std::nullopt;
  if (!p.constant_term().is_zero()) return std::nullopt;
  std::optional<SmoothPower> out;
  for (auto& [f, k] : square_free_layers(p)) {
    if (!f.constant_term().is_zero()) continue;
    if (out || k < 2 || f.order() != 1) return std::nullopt;
    out = SmoothPower{f, k, Polynomial(2)};
  }
  if (!out) return std::nullopt;
  auto r = exact_divide(p, out->factor.pow(out->multiplicity));
  if (!r || r->constant_term().is_zero()) return std::nullopt;
  out->cofactor = *r;
  return out;
}

}  // namespace zerocurv
