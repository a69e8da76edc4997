#include "zerocurv/polynomial.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace zerocurv {

namespace {

std::size_t pack(const Monomial& m) {
  return (static_cast<std::size_t>(m.e[0]) << 42) | (static_cast<std::size_t>(m.e[1]) << 21) |
         static_cast<std::size_t>(m.e[2]);
}

Monomial unpack(std::size_t k) {
  constexpr std::size_t mask = (std::size_t{1} << 21) - 1;
  return {{static_cast<int>(k >> 42), static_cast<int>((k >> 21) & mask),
           static_cast<int>(k & mask)}};
}

}  // namespace

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
  if (nvars < 1 || nvars > 3) throw std::invalid_argument("nvars must be 1, 2 or 3");
}

Polynomial::Polynomial(int nvars, Terms terms) : Polynomial(nvars) {
  for (auto& [m, c] : terms) add_term(m, c);
}

Polynomial Polynomial::constant(int nvars, const Scalar& c) {
  Polynomial p(nvars);
  p.add_term(Monomial{}, c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int var) {
  if (var < 0 || var >= nvars) throw std::out_of_range("variable index");
  Monomial m;
  m[var] = 1;
  return monomial(nvars, m);
}

Polynomial Polynomial::monomial(int nvars, const Monomial& m, const Scalar& c) {
  Polynomial p(nvars);
  for (int i = nvars; i < 3; ++i) {
    if (m.e[i] != 0) throw std::invalid_argument("monomial uses an absent variable");
  }
  p.add_term(m, c);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total() == 0);
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

int Polynomial::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.total(); }

int Polynomial::order() const { return terms_.empty() ? -1 : terms_.begin()->first.total(); }

int Polynomial::degree_in(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.e[var]);
  return d;
}

std::int64_t Polynomial::radicand() const {
  std::int64_t d = 0;
  for (const auto& [m, c] : terms_) d = common_radicand(d, c.radicand());
  return d;
}

Polynomial Polynomial::with_nvars(int nvars) const {
  Polynomial r(nvars);
  for (const auto& [m, c] : terms_) {
    for (int i = nvars; i < 3; ++i) {
      if (m.e[i] != 0) throw std::invalid_argument("polynomial depends on a dropped variable");
    }
  }
  r.terms_ = terms_;
  return r;
}

void Polynomial::check_compatible(const Polynomial& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

Polynomial operator*(const Polynomial& l, const Polynomial& r) {
  l.check_compatible(r);
  Polynomial out(l.nvars());
  if (l.is_zero() || r.is_zero()) return out;
  if (l.is_rational() && r.is_rational()) {
    // Hot path of every symbolic determinant: accumulate raw mpq values.
    std::unordered_map<std::size_t, Rational> acc;
    acc.reserve(l.size() * r.size());
    Rational prod;
    for (const auto& [ml, cl] : l.terms()) {
      for (const auto& [mr, cr] : r.terms()) {
        prod = cl.rational_part() * cr.rational_part();
        acc[pack(ml + mr)] += prod;
      }
    }
    for (auto& [k, v] : acc) {
      if (sgn(v) != 0) out.terms_.emplace(unpack(k), Scalar(v));
    }
    return out;
  }
  for (const auto& [ml, cl] : l.terms()) {
    for (const auto& [mr, cr] : r.terms()) out.add_term(ml + mr, cl * cr);
  }
  return out;
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative power");
  Polynomial result = constant(nvars_, Scalar(1));
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Scalar Polynomial::evaluate(std::span<const Scalar> point) const {
  if (static_cast<int>(point.size()) < nvars_) throw std::invalid_argument("point too short");
  Scalar acc(0);
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (int i = 0; i < nvars_; ++i) {
      for (int k = 0; k < m.e[i]; ++k) t *= point[i];
    }
    acc += t;
  }
  return acc;
}

double Polynomial::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) < nvars_) throw std::invalid_argument("point too short");
  double acc = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c.to_double();
    for (int i = 0; i < nvars_; ++i) {
      for (int k = 0; k < m.e[i]; ++k) t *= point[i];
    }
    acc += t;
  }
  return acc;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string coeff;
    bool negative = false;
    if (c.is_rational()) {
      Rational q = c.rational_part();
      negative = sgn(q) < 0;
      q = abs(q);
      if (q != 1 || m.total() == 0) coeff = to_string(q);
    } else {
      coeff = c.str();
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string vars;
    for (int i = 0; i < 3; ++i) {
      if (m.e[i] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += "x" + std::to_string(i + 1);
      if (m.e[i] != 1) vars += "^" + std::to_string(m.e[i]);
    }
    if (!coeff.empty() && !vars.empty()) out += coeff + "*" + vars;
    else out += coeff + vars;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

Polynomial derivative(const Polynomial& p, int var) {
  if (var < 0 || var >= p.nvars()) throw std::out_of_range("variable index");
  Polynomial r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m.e[var] == 0) continue;
    Monomial dm = m;
    dm[var] -= 1;
    r.add_term(dm, c * Scalar(static_cast<long>(m.e[var])));
  }
  return r;
}

Polynomial compose(const Polynomial& p, std::span<const Polynomial> images) {
  if (static_cast<int>(images.size()) != p.nvars()) {
    throw std::invalid_argument("compose needs one image per variable");
  }
  int target = images.empty() ? 1 : images[0].nvars();
  for (const auto& im : images) {
    if (im.nvars() != target) throw std::invalid_argument("images disagree on variable count");
  }
  std::vector<std::vector<Polynomial>> powers(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    int dmax = std::max(p.degree_in(static_cast<int>(i)), 0);
    powers[i].reserve(dmax + 1);
    powers[i].push_back(Polynomial::constant(target, Scalar(1)));
    for (int k = 1; k <= dmax; ++k) powers[i].push_back(powers[i].back() * images[i]);
  }
  Polynomial out(target);
  for (const auto& [m, c] : p.terms()) {
    Polynomial t = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (m.e[i] > 0) t = t * powers[i][m.e[i]];
    }
    out += t;
  }
  return out;
}

Polynomial substitute(const Polynomial& p, int var, const Polynomial& psi) {
  if (var < 0 || var >= p.nvars()) throw std::out_of_range("variable index");
  std::vector<Polynomial> images;
  for (int i = 0; i < p.nvars(); ++i) {
    images.push_back(i == var ? psi : Polynomial::variable(p.nvars(), i));
  }
  return compose(p, images);
}

std::vector<std::vector<Polynomial>> hessian_matrix(const Polynomial& p) {
  int n = p.nvars();
  std::vector<Polynomial> grad;
  for (int i = 0; i < n; ++i) grad.push_back(derivative(p, i));
  std::vector<std::vector<Polynomial>> h(n, std::vector<Polynomial>(n, Polynomial(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      h[i][j] = derivative(grad[i], j);
      h[j][i] = h[i][j];
    }
  }
  return h;
}

Polynomial hessian_det(const Polynomial& p) {
  if (p.nvars() != 3) throw std::invalid_argument("hessian_det needs a trivariate polynomial");
  auto h = hessian_matrix(p);
  // cofactor expansion along the first row
  Polynomial m11 = h[1][1] * h[2][2] - h[1][2] * h[1][2];
  Polynomial m12 = h[0][1] * h[2][2] - h[1][2] * h[0][2];
  Polynomial m13 = h[0][1] * h[1][2] - h[1][1] * h[0][2];
  return h[0][0] * m11 - h[0][1] * m12 + h[0][2] * m13;
}

Polynomial homogeneous_part(const Polynomial& p, int k) {
  Polynomial r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m.total() == k) r.add_term(m, c);
  }
  return r;
}

}  // namespace zerocurv
