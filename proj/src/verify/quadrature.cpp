#include "zerocurv/verify/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_bessel.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace zerocurv::verify {

void Budget::spend(std::size_t n) {
  used += n;
  if (used > limit) throw ToleranceNotMet("evaluation budget of " + std::to_string(limit) + " exhausted");
}

void spherical_bessel(int lmax, double x, std::span<double> out) {
  double ax = std::fabs(x);
  if (ax > lmax + 1.0) {
    // upward recurrence is stable above the turning point
    double s = std::sin(ax);
    double c = std::cos(ax);
    out[0] = s / ax;
    if (lmax >= 1) out[1] = s / (ax * ax) - c / ax;
    for (int l = 1; l < lmax; ++l) out[l + 1] = (2 * l + 1) / ax * out[l] - out[l - 1];
  } else {
    static const bool handler_off = [] {
      gsl_set_error_handler_off();
      return true;
    }();
    (void)handler_off;
    gsl_sf_bessel_jl_steed_array(lmax, ax, out.data());
  }
  if (x < 0) {
    for (int l = 1; l <= lmax; l += 2) out[l] = -out[l];
  }
}

LegendreRule::LegendreRule(int n_) : n(n_), nodes(n_), weights(n_), proj(static_cast<std::size_t>(n_) * n_) {
  gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(n);
  for (int j = 0; j < n; ++j) gsl_integration_glfixed_point(-1.0, 1.0, j, &nodes[j], &weights[j], t);
  gsl_integration_glfixed_table_free(t);
  for (int j = 0; j < n; ++j) {
    double p0 = 1.0;
    double p1 = nodes[j];
    for (int l = 0; l < n; ++l) {
      double pl = l == 0 ? p0 : p1;
      proj[static_cast<std::size_t>(l) * n + j] = (2 * l + 1) / 2.0 * weights[j] * pl;
      if (l >= 1) {
        double p2 = ((2 * l + 1) * nodes[j] * p1 - l * p0) / (l + 1);
        p0 = p1;
        p1 = p2;
      }
    }
  }
}

namespace {

const LegendreRule& rule_for(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<LegendreRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<LegendreRule>(n);
  return *slot;
}

struct Panel {
  double a, b;
  int depth;
};

}  // namespace

QuadResult adaptive_filon(const AmplitudeFn& amplitude, const PhaseFn& phase, double a, double b,
                          const FilonOptions& opt) {
  const LegendreRule& rule = rule_for(opt.nodes);
  const int n = rule.n;
  const double total = b - a;
  QuadResult res;
  if (!(total > 0)) return res;

  std::vector<double> x(n), ph(n), err(n), jl(n);
  std::vector<Complex> amp(n), g(n), coef(n);
  double ends_x[2];
  double ends_ph[2];
  // i^l
  static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

  std::vector<Panel> stack{{a, b, 0}};
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    double m = 0.5 * (p.a + p.b);
    double s = 0.5 * (p.b - p.a);
    for (int j = 0; j < n; ++j) x[j] = m + s * rule.nodes[j];
    ends_x[0] = p.a;
    ends_x[1] = p.b;
    phase(std::span<const double>(ends_x, 2), std::span<double>(ends_ph, 2));
    phase(x, ph);
    if (opt.budget) opt.budget->spend(n);
    double k = (ends_ph[1] - ends_ph[0]) / (p.b - p.a);
    double c0 = 0.5 * (ends_ph[0] + ends_ph[1]);
    double max_res = 0.0;
    for (int j = 0; j < n; ++j) {
      ph[j] -= c0 + k * (x[j] - m);
      max_res = std::max(max_res, std::fabs(ph[j]));
    }
    bool can_split = p.depth < opt.max_depth;
    if (max_res > opt.max_residual_phase && can_split) {
      stack.push_back({m, p.b, p.depth + 1});
      stack.push_back({p.a, m, p.depth + 1});
      continue;
    }
    std::fill(err.begin(), err.end(), 0.0);
    amplitude(x, amp, err);
    for (int j = 0; j < n; ++j) g[j] = amp[j] * Complex(std::cos(ph[j]), std::sin(ph[j]));
    for (int l = 0; l < n; ++l) {
      Complex acc(0, 0);
      const double* row = &rule.proj[static_cast<std::size_t>(l) * n];
      for (int j = 0; j < n; ++j) acc += row[j] * g[j];
      coef[l] = acc;
    }
    double tail = 2.0 * s * (std::abs(coef[n - 1]) + std::abs(coef[n - 2]));
    double amp_err = 0.0;
    for (int j = 0; j < n; ++j) amp_err += rule.weights[j] * err[j];
    amp_err *= s;
    double local_tol = opt.abs_tol * (p.b - p.a) / total;
    if (tail > local_tol && can_split) {
      stack.push_back({m, p.b, p.depth + 1});
      stack.push_back({p.a, m, p.depth + 1});
      continue;
    }
    spherical_bessel(n - 1, k * s, jl);
    Complex sum(0, 0);
    for (int l = 0; l < n; ++l) sum += coef[l] * (2.0 * jl[l]) * ipow[l & 3];
    double arg = c0;
    res.value += s * Complex(std::cos(arg), std::sin(arg)) * sum;
    res.error += tail + amp_err;
    if (max_res > opt.max_residual_phase) res.error += 2.0 * s * std::abs(coef[0]);
    ++res.panels;
  }
  return res;
}

}  // namespace zerocurv::verify
