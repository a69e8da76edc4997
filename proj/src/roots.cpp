#include "zerocurv/roots.hpp"

#include <algorithm>
#include <stdexcept>

namespace zerocurv {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& q : c_) q.canonicalize();
  trim();
}

void UPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

UPoly UPoly::from_polynomial(const Polynomial& p) {
  if (p.nvars() != 1) throw std::invalid_argument("expected a univariate polynomial");
  std::vector<Rational> c(std::max(p.degree() + 1, 0));
  for (const auto& [m, v] : p.terms()) c[m.e[0]] = v.as_rational();
  return UPoly(std::move(c));
}

Polynomial UPoly::to_polynomial() const {
  Polynomial p(1);
  for (int i = 0; i <= degree(); ++i) p.add_term(Monomial{{i, 0, 0}}, Scalar(c_[i]));
  return p;
}

Rational UPoly::evaluate(const Rational& t) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  std::vector<Rational> m = c_;
  Rational lc = leading();
  for (auto& q : m) q /= lc;
  return UPoly(std::move(m));
}

UPoly operator-(const UPoly& l, const UPoly& r) {
  std::vector<Rational> c(std::max(l.c_.size(), r.c_.size()), Rational(0));
  for (std::size_t i = 0; i < l.c_.size(); ++i) c[i] += l.c_[i];
  for (std::size_t i = 0; i < r.c_.size(); ++i) c[i] -= r.c_[i];
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {UPoly(), a};
  std::vector<Rational> quo(da - db + 1, Rational(0));
  for (int k = da - db; k >= 0; --k) {
    Rational f = rem[k + db] / b.leading();
    quo[k] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= db; ++j) rem[k + j] -= f * b[j];
  }
  rem.resize(db);
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a;
  UPoly y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

std::vector<std::pair<UPoly, int>> square_free_decomposition(const UPoly& q) {
  if (q.is_zero()) throw std::invalid_argument("square-free decomposition of zero");
  std::vector<std::pair<UPoly, int>> out;
  if (q.degree() == 0) return out;
  UPoly f = q.monic();
  UPoly fp = f.derivative();
  UPoly a = gcd(f, fp);
  UPoly b = divmod(f, a).first;
  UPoly c = divmod(fp, a).first;
  UPoly d = c - b.derivative();
  int k = 1;
  while (b.degree() > 0) {
    UPoly ak = gcd(b, d);
    b = divmod(b, ak).first;
    c = divmod(d, ak).first;
    d = c - b.derivative();
    if (ak.degree() > 0) out.emplace_back(ak, k);
    ++k;
  }
  return out;
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    UPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    std::vector<Rational> neg = r.coeffs();
    for (auto& v : neg) v = -v;
    seq.emplace_back(std::move(neg));
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

namespace {

int variations(const std::vector<UPoly>& seq, const Rational& t) {
  int count = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = p.sign_at(t);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// Convergents of x with denominator at most bound.
std::vector<Rational> convergents(Rational x, const Integer& bound) {
  std::vector<Rational> out;
  Integer h_prev = 1, h_prev2 = 0;
  Integer k_prev = 0, k_prev2 = 1;
  for (int iter = 0; iter < 4096; ++iter) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    Integer h = a * h_prev + h_prev2;
    Integer k = a * k_prev + k_prev2;
    if (k > bound) break;
    out.emplace_back(h, k);
    out.back().canonicalize();
    Rational frac = x - Rational(a);
    if (sgn(frac) == 0) break;
    x = 1 / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return out;
}

// Largest absolute leading coefficient of the primitive integer multiple.
Integer integer_leading(const UPoly& p) {
  Integer l = 1;
  for (const auto& q : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> ints;
  Integer g = 0;
  for (const auto& q : p.coeffs()) {
    Integer v = q.get_num() * (l / q.get_den());
    ints.push_back(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  return abs(ints.back() / g);
}

// Distinct real roots of a square-free polynomial.
std::vector<RealRoot> isolate(const UPoly& p, const Rational& width) {
  std::vector<RealRoot> roots;
  if (p.degree() < 1) return roots;
  auto seq = sturm_sequence(p);
  Rational bound(0);
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(p[i] / p.leading());
    if (r > bound) bound = r;
  }
  bound += 1;
  Integer lc = integer_leading(p);
  Rational rational_width(1, 1);
  rational_width /= Rational(2 * lc * lc);

  struct Job {
    Rational lo, hi;
    int n;
  };
  std::vector<Job> stack{{-bound, bound, sturm_count(seq, -bound, bound)}};
  while (!stack.empty()) {
    Job job = stack.back();
    stack.pop_back();
    if (job.n == 0) continue;
    if (job.n > 1) {
      Rational mid = (job.lo + job.hi) / 2;
      int left = sturm_count(seq, job.lo, mid);
      stack.push_back({mid, job.hi, job.n - left});
      stack.push_back({job.lo, mid, left});
      continue;
    }
    RealRoot root;
    root.multiplicity = 1;
    Rational lo = job.lo;
    Rational hi = job.hi;
    bool exact = false;
    Rational target = std::min(width, rational_width);
    while (true) {
      if (p.sign_at(hi) == 0) {
        exact = true;
        lo = hi;
        break;
      }
      if (hi - lo <= target) break;
      Rational mid = (lo + hi) / 2;
      if (sturm_count(seq, lo, mid) == 1) hi = mid;
      else lo = mid;
    }
    if (!exact) {
      for (const auto& c : convergents((lo + hi) / 2, lc)) {
        if (c > lo && c <= hi && p.sign_at(c) == 0) {
          exact = true;
          lo = hi = c;
          break;
        }
      }
    }
    if (exact) root.exact = hi;
    root.lo = lo;
    root.hi = hi;
    roots.push_back(std::move(root));
  }
  return roots;
}

}  // namespace

int sturm_count(const std::vector<UPoly>& seq, const Rational& lo, const Rational& hi) {
  return variations(seq, lo) - variations(seq, hi);
}

double RealRoot::approx() const {
  if (exact) return exact->get_d();
  return Rational((lo + hi) / 2).get_d();
}

std::vector<RealRoot> real_root_multiplicities(const UPoly& q, const Rational& width) {
  if (q.is_zero()) throw std::invalid_argument("real roots of the zero polynomial");
  std::vector<RealRoot> out;
  for (const auto& [s, k] : square_free_decomposition(q)) {
    for (auto& r : isolate(s, width)) {
      r.multiplicity = k;
      out.push_back(std::move(r));
    }
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) { return a.hi < b.hi; });
  return out;
}

std::vector<RealRoot> real_root_multiplicities(const Polynomial& q, const Rational& width) {
  return real_root_multiplicities(UPoly::from_polynomial(q), width);
}

}  // namespace zerocurv
