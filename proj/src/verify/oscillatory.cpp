#include "zerocurv/verify/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace zerocurv::verify {

double BumpSpec::amplitude_at_origin() const { return std::exp(-3.0); }

double BumpSpec::integral() const {
  double one = Bump(radius).integral();
  return one * one * one;
}

NumericPoly NumericPoly::from(const Polynomial& p) {
  NumericPoly out;
  for (const auto& [m, c] : p.terms()) out.terms.push_back({m.e, c.to_double()});
  return out;
}

double NumericPoly::operator()(const std::array<double, 3>& x) const {
  double acc = 0.0;
  for (const auto& t : terms) {
    double v = t.c;
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < t.e[k]; ++i) v *= x[k];
    }
    acc += v;
  }
  return acc;
}

bool NumericPoly::depends_on(int var) const {
  return std::any_of(terms.begin(), terms.end(), [&](const Term& t) { return t.e[var] > 0; });
}

std::vector<double> NumericPoly::restrict_to(int var, const std::array<double, 3>& x) const {
  int deg = 0;
  for (const auto& t : terms) deg = std::max(deg, t.e[var]);
  std::vector<double> c(deg + 1, 0.0);
  for (const auto& t : terms) {
    double v = t.c;
    for (int k = 0; k < 3; ++k) {
      if (k == var) continue;
      for (int i = 0; i < t.e[k]; ++i) v *= x[k];
    }
    c[t.e[var]] += v;
  }
  return c;
}

namespace {

double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

NumericPoly select_terms(const Polynomial& p, const std::function<bool(const Monomial&)>& keep) {
  Polynomial q(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (keep(m)) q.add_term(m, c);
  }
  return NumericPoly::from(q);
}

}  // namespace

OscillatoryPlan::OscillatoryPlan(const Polynomial& phi_in, BumpSpec bump) : bump_(bump), b_(bump.radius) {
  Polynomial phi = phi_in.with_nvars(3);
  // largest set of variables in which every monomial has degree <= 1 jointly
  int best = 0;
  int best_size = -1;
  for (int mask = 0; mask < 8; ++mask) {
    bool ok = true;
    for (const auto& [m, c] : phi.terms()) {
      int deg = 0;
      for (int v = 0; v < 3; ++v) {
        if (mask & (1 << v)) deg += m.e[v];
      }
      if (deg > 1) {
        ok = false;
        break;
      }
    }
    int size = __builtin_popcount(mask);
    if (ok && size > best_size) {
      best = mask;
      best_size = size;
    }
  }
  std::vector<int> rest;
  for (int v = 0; v < 3; ++v) {
    if (best & (1 << v)) {
      affine_.push_back(v);
    } else {
      rest.push_back(v);
    }
  }
  for (int v = 0; v < 3; ++v) coeff_all_[v] = NumericPoly::from(derivative(phi, v));
  for (int s : affine_) coeff_.push_back(coeff_all_[s]);

  // connected components of the remaining variables
  std::array<int, 3> parent{0, 1, 2};
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  auto join_all = [&](const std::array<int, 3>& e) {
    int first = -1;
    for (int v : rest) {
      if (e[v] == 0) continue;
      if (first < 0) {
        first = v;
      } else {
        parent[find(v)] = find(first);
      }
    }
  };
  // a term x_s * f(rest) couples all variables of f through the transform
  for (const auto& [m, c] : phi.terms()) {
    std::array<int, 3> e = m.e;
    for (int s : affine_) e[s] = 0;
    join_all(e);
  }
  for (int root : rest) {
    if (find(root) != root) continue;
    Group g;
    for (int v : rest) {
      if (find(v) == root) g.vars.push_back(v);
    }
    // inner variable: highest degree
    auto degree_of = [&](int v) { return phi.degree_in(v); };
    std::stable_sort(g.vars.begin(), g.vars.end(), [&](int a, int b) { return degree_of(a) > degree_of(b); });
    std::vector<int> vars = g.vars;
    g.phase = select_terms(phi, [&](const Monomial& m) {
      for (int s : affine_) {
        if (m.e[s] > 0) return false;
      }
      return std::any_of(vars.begin(), vars.end(), [&](int v) { return m.e[v] > 0; });
    });
    for (int s : affine_) {
      if (std::any_of(vars.begin(), vars.end(), [&](int v) { return coeff_all_[s].depends_on(v); })) {
        g.affine_vars.push_back(s);
      }
    }
    groups_.push_back(std::move(g));
  }
}

struct Evaluator {
  const OscillatoryPlan& plan;
  const std::array<double, 4>& xi;
  Budget& budget;

  // Level k integrates over group.vars[k] with the outer variables fixed in x.
  QuadResult level(const OscillatoryPlan::Group& g, int k, std::array<double, 3> x, double tol) const {
    const int v = g.vars[k];
    const double r = plan.bump_.radius;
    // phase terms whose innermost variable (in nesting order) is v
    auto innermost = [&](const std::array<int, 3>& e) {
      for (std::size_t i = 0; i < g.vars.size(); ++i) {
        if (e[g.vars[i]] > 0) return static_cast<int>(i);
      }
      return -1;
    };
    NumericPoly own;
    for (const auto& t : g.phase.terms) {
      if (innermost(t.e) == k) own.terms.push_back(t);
    }
    std::vector<double> phase_c = own.restrict_to(v, x);
    for (auto& c : phase_c) c *= xi[3];
    if (phase_c.size() < 2) phase_c.resize(2, 0.0);
    phase_c[1] += xi[v];

    std::vector<std::vector<double>> freq;  // transform arguments as polynomials in x_v
    for (int s : g.affine_vars) {
      const auto& cs = plan.coeff_all_[s];
      int lvl = 99;
      for (const auto& t : cs.terms) lvl = std::min(lvl, innermost(t.e));
      if (lvl != k) continue;
      auto c = cs.restrict_to(v, x);
      for (auto& e : c) e *= xi[3];
      c[0] += xi[s];
      freq.push_back(std::move(c));
    }

    PhaseFn phase = [&](std::span<const double> t, std::span<double> out) {
      for (std::size_t j = 0; j < t.size(); ++j) out[j] = horner(phase_c, t[j]);
    };
    double inner_tol = tol / (2.0 * r);
    AmplitudeFn amp = [&](std::span<const double> t, std::span<Complex> out, std::span<double> err) {
      for (std::size_t j = 0; j < t.size(); ++j) {
        double a = plan.b_(t[j]);
        for (const auto& c : freq) {
          if (a == 0.0) break;
          a *= plan.b_.fourier(horner(c, t[j]));
        }
        if (k == 0 || a == 0.0) {
          out[j] = a;
          err[j] = 0.0;
          continue;
        }
        std::array<double, 3> y = x;
        y[v] = t[j];
        QuadResult in = level(g, k - 1, y, inner_tol / std::max(std::fabs(a), 1e-300));
        out[j] = a * in.value;
        err[j] = std::fabs(a) * in.error;
      }
    };
    FilonOptions opt;
    opt.abs_tol = tol;
    opt.budget = &budget;
    return adaptive_filon(amp, phase, -r, r, opt);
  }
};

OscillatoryValue eval_oscillatory(const OscillatoryPlan& plan, const std::array<double, 4>& xi,
                                  const OscillatoryOptions& opt) {
  const double one_d = Bump(plan.bump().radius).integral();
  const double scale = plan.bump().integral();
  const double floor = 1e-15 * scale;
  double tol = std::max(opt.abs_tol > 0 ? opt.abs_tol : 1e-7 * scale, floor);
  Budget budget;
  budget.limit = opt.budget;

  OscillatoryValue out;
  if (xi[3] == 0.0) {
    // no phase: the integral factorizes
    Bump b(plan.bump().radius);
    out.value = b.fourier(xi[0]) * b.fourier(xi[1]) * b.fourier(xi[2]);
    out.error = floor;
    return out;
  }
  // constant transform factors
  double constant = 1.0;
  for (std::size_t i = 0; i < plan.affine_vars().size(); ++i) {
    int s = plan.affine_vars()[i];
    bool in_group = false;
    for (const auto& g : plan.groups()) {
      in_group |= std::find(g.affine_vars.begin(), g.affine_vars.end(), s) != g.affine_vars.end();
    }
    if (in_group) continue;
    const auto& c = plan.affine_coefficients()[i];
    double k = xi[3] * c({0, 0, 0}) + xi[s];
    constant *= Bump(plan.bump().radius).fourier(k);
  }
  if (constant == 0.0) {
    out.error = floor;
    return out;
  }
  Complex value = constant;
  double rel_err = 0.0;
  Evaluator ev{plan, xi, budget};
  for (const auto& g : plan.groups()) {
    double others = std::fabs(constant);
    for (const auto& h : plan.groups()) {
      if (&h != &g) others *= std::pow(one_d, static_cast<double>(h.vars.size()));
    }
    double gtol = std::min(tol / others, 1e-3 * std::pow(one_d, static_cast<double>(g.vars.size())));
    QuadResult r = ev.level(g, static_cast<int>(g.vars.size()) - 1, {0, 0, 0}, gtol);
    value *= r.value;
    double mag = std::abs(r.value);
    rel_err += mag > 0 ? r.error / mag : INFINITY;
    if (mag == 0) {
      value = 0;
      break;
    }
  }
  out.value = value;
  out.error = std::isfinite(rel_err) ? rel_err * std::abs(value) : floor;
  out.error = std::max(out.error, floor);
  return out;
}

OscillatoryValue eval_oscillatory(const Polynomial& phi, const BumpSpec& bump, const std::array<double, 4>& xi,
                                  const OscillatoryOptions& opt) {
  return eval_oscillatory(OscillatoryPlan(phi, bump), xi, opt);
}

Complex brute_force_oscillatory(const OscillatoryPlan& plan, const std::array<double, 4>& xi, long nodes) {
  const double r = plan.bump().radius;
  Bump b(r);
  int dims = 0;
  for (const auto& g : plan.groups()) dims += static_cast<int>(g.vars.size());
  long per_axis = dims == 0 ? 1 : static_cast<long>(std::llround(std::pow(static_cast<double>(nodes), 1.0 / dims)));
  double h = 2.0 * r / per_axis;

  Complex total = 1.0;
  for (std::size_t i = 0; i < plan.affine_vars().size(); ++i) {
    int s = plan.affine_vars()[i];
    bool in_group = false;
    for (const auto& g : plan.groups()) {
      in_group |= std::find(g.affine_vars.begin(), g.affine_vars.end(), s) != g.affine_vars.end();
    }
    if (!in_group) total *= b.fourier(xi[3] * plan.affine_coefficients()[i]({0, 0, 0}) + xi[s]);
  }
  for (const auto& g : plan.groups()) {
    int d = static_cast<int>(g.vars.size());
    long count = 1;
    for (int i = 0; i < d; ++i) count *= per_axis;
    Complex sum = 0.0;
    for (long idx = 0; idx < count; ++idx) {
      std::array<double, 3> x{0, 0, 0};
      long rem = idx;
      double w = 1.0;
      for (int i = 0; i < d; ++i) {
        double t = -r + (static_cast<double>(rem % per_axis) + 0.5) * h;
        rem /= per_axis;
        x[g.vars[i]] = t;
        w *= b(t) * h;
      }
      if (w == 0.0) continue;
      double ph = xi[3] * g.phase(x);
      for (int v : g.vars) ph += xi[v] * x[v];
      for (int s : g.affine_vars) {
        auto it = std::find(plan.affine_vars().begin(), plan.affine_vars().end(), s);
        const auto& c = plan.affine_coefficients()[it - plan.affine_vars().begin()];
        w *= b.fourier(xi[3] * c(x) + xi[s]);
      }
      sum += w * Complex(std::cos(ph), std::sin(ph));
    }
    total *= sum;
  }
  return total;
}

}  // namespace zerocurv::verify
