#include "zerocurv/verify/sublevel.hpp"

#include <gsl/gsl_fit.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>

#include "zerocurv/verify/oscillatory.hpp"

namespace zerocurv::verify {

std::vector<SublevelPoint> SublevelSamples::accepted() const {
  std::vector<SublevelPoint> out;
  for (const auto& p : points) {
    if (p.accepted) out.push_back(p);
  }
  return out;
}

std::vector<double> epsilon_grid(double eps_min, double eps_max, int per_octave) {
  std::vector<double> out;
  int steps = static_cast<int>(std::lround(std::log2(eps_max / eps_min) * per_octave));
  for (int i = 0; i <= steps; ++i) out.push_back(eps_min * std::exp2(static_cast<double>(i) / per_octave));
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Converges:
      return "converges";
    case Verdict::Diverges:
      return "diverges";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

using Coeffs = std::vector<double>;

double horner(const Coeffs& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Coeffs derivative(const Coeffs& c) {
  Coeffs d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
  return d;
}

void trim(Coeffs& c) {
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::fabs(v));
  while (!c.empty() && std::fabs(c.back()) <= 1e-300 + 1e-15 * scale) c.pop_back();
}

// root of a function monotone on [a, b] with f(a), f(b) of opposite sign
double bisect(const Coeffs& c, double target, double a, double b) {
  double fa = horner(c, a) - target;
  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    double fm = horner(c, m) - target;
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Breakpoints a = t0 < t1 < ... < tk = b such that c is monotone on each piece.
std::vector<double> monotone_breaks(const Coeffs& c_in, double a, double b) {
  Coeffs c = c_in;
  trim(c);
  std::vector<double> out{a};
  if (c.size() > 2) {
    Coeffs d = derivative(c);
    trim(d);
    auto dbreaks = monotone_breaks(d, a, b);
    for (std::size_t i = 0; i + 1 < dbreaks.size(); ++i) {
      double u = dbreaks[i];
      double v = dbreaks[i + 1];
      double du = horner(d, u);
      double dv = horner(d, v);
      if (du == 0.0 && i > 0) {
        out.push_back(u);
      } else if ((du < 0) != (dv < 0) && dv != 0.0) {
        out.push_back(bisect(d, 0.0, u, v));
      }
    }
  }
  if (out.back() < b) out.push_back(b);
  return out;
}

// length of {t in [u, v] : lo <= c(t) <= hi} with c monotone on [u, v]
double monotone_length(const Coeffs& c, double u, double v, double fu, double fv, double lo, double hi) {
  bool inc = fv >= fu;
  double fmin = inc ? fu : fv;
  double fmax = inc ? fv : fu;
  if (fmax < lo || fmin > hi) return 0.0;
  // parameter where c crosses a level, clipped to the piece
  auto cross = [&](double level) {
    if (level <= fmin) return inc ? u : v;
    if (level >= fmax) return inc ? v : u;
    return bisect(c, level, u, v);
  };
  double t_lo = cross(lo);
  double t_hi = cross(hi);
  return std::fabs(t_hi - t_lo);
}

struct Line {
  Coeffs c;
  std::vector<double> breaks;
  std::vector<double> values;
};

// sublevel lengths for all eps along one line
void line_lengths(const Coeffs& c, double a, double b, const std::vector<double>& eps, double* out) {
  Coeffs t = c;
  trim(t);
  if (t.size() <= 1) {
    double v = t.empty() ? 0.0 : t[0];
    for (std::size_t e = 0; e < eps.size(); ++e) out[e] = std::fabs(v) <= eps[e] ? (b - a) : 0.0;
    return;
  }
  auto br = monotone_breaks(t, a, b);
  std::vector<double> vals(br.size());
  for (std::size_t i = 0; i < br.size(); ++i) vals[i] = horner(t, br[i]);
  const double emax = eps.back();
  std::fill(out, out + eps.size(), 0.0);
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    double fu = vals[i];
    double fv = vals[i + 1];
    if (std::min(fu, fv) > emax || std::max(fu, fv) < -emax) continue;
    for (std::size_t e = 0; e < eps.size(); ++e) {
      out[e] += monotone_length(t, br[i], br[i + 1], fu, fv, -eps[e], eps[e]);
    }
  }
}

struct Stratum {
  std::array<double, 2> lo{0, 0};
  std::array<double, 2> hi{0, 0};
  std::vector<std::array<double, 2>> pos;
  std::vector<std::vector<double>> len;  // per sample, per eps

  double volume(int tdim) const {
    double v = 1.0;
    for (int i = 0; i < tdim; ++i) v *= hi[i] - lo[i];
    return v;
  }
};

}  // namespace

SublevelSamples sublevel_measure(const Polynomial& phi_in, const Box& U, const std::vector<double>& eps_grid,
                                 const SublevelOptions& opt) {
  if (eps_grid.empty()) return {};
  std::vector<double> eps = eps_grid;
  std::sort(eps.begin(), eps.end());
  const std::size_t ne = eps.size();
  Polynomial phi = phi_in.with_nvars(3);
  NumericPoly np = NumericPoly::from(phi);

  std::vector<int> active;
  for (int v = 0; v < 3; ++v) {
    if (phi.depends_on(v)) active.push_back(v);
  }
  SublevelSamples out;

  // idle axes contribute their full length
  double idle = 1.0;
  for (int v = 0; v < 3; ++v) {
    if (!phi.depends_on(v)) idle *= U.hi[v] - U.lo[v];
  }
  if (active.empty()) {
    double c = std::fabs(np({0, 0, 0}));
    for (double e : eps) out.points.push_back({e, c <= e ? U.volume() : 0.0, 0.0, true});
    return out;
  }

  // line axis: lowest positive degree, lengths vary most smoothly along it
  int axis = active.front();
  for (int v : active) {
    if (phi.degree_in(v) < phi.degree_in(axis)) axis = v;
  }
  out.line_axis = axis;
  std::vector<int> tv;
  for (int v : active) {
    if (v != axis) tv.push_back(v);
  }
  const int tdim = static_cast<int>(tv.size());

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto sample_line = [&](const std::array<double, 2>& y, std::vector<double>& len) {
    std::array<double, 3> x{0, 0, 0};
    for (int i = 0; i < tdim; ++i) x[tv[i]] = y[i];
    Coeffs c = np.restrict_to(axis, x);
    len.assign(ne, 0.0);
    line_lengths(c, U.lo[axis], U.hi[axis], eps, len.data());
    ++out.lines;
  };

  if (tdim == 0) {
    std::vector<double> len;
    sample_line({0, 0}, len);
    for (std::size_t e = 0; e < ne; ++e) out.points.push_back({eps[e], len[e] * idle, 0.0, true});
    out.strata = 1;
    return out;
  }

  auto top_up = [&](Stratum& s, std::size_t n) {
    while (s.pos.size() < n) {
      std::array<double, 2> y{0, 0};
      for (int i = 0; i < tdim; ++i) y[i] = s.lo[i] + (s.hi[i] - s.lo[i]) * unit(rng);
      std::vector<double> len;
      sample_line(y, len);
      s.pos.push_back(y);
      s.len.push_back(std::move(len));
    }
  };

  constexpr int kInitial = 8;  // per transverse axis
  constexpr std::size_t kMinSamples = 16;
  constexpr std::size_t kSplitAt = 64;
  std::vector<Stratum> strata;
  {
    int cells = tdim == 1 ? kInitial : kInitial * kInitial;
    for (int k = 0; k < cells; ++k) {
      Stratum s;
      int idx[2] = {k % kInitial, k / kInitial};
      for (int i = 0; i < tdim; ++i) {
        double w = (U.hi[tv[i]] - U.lo[tv[i]]) / kInitial;
        s.lo[i] = U.lo[tv[i]] + idx[i] * w;
        s.hi[i] = s.lo[i] + w;
      }
      top_up(s, kMinSamples);
      strata.push_back(std::move(s));
    }
  }

  // per stratum mean and variance of the mean, for one eps
  auto stats = [&](const Stratum& s, std::size_t e, double& mean, double& var_mean) {
    double sum = 0.0;
    double sq = 0.0;
    for (const auto& l : s.len) {
      sum += l[e];
      sq += l[e] * l[e];
    }
    double n = static_cast<double>(s.len.size());
    mean = sum / n;
    double var = n > 1 ? std::max(0.0, (sq - sum * sum / n) / (n - 1)) : 0.0;
    var_mean = var / n;
  };

  std::vector<double> mu(ne), var(ne);
  auto totals = [&] {
    std::fill(mu.begin(), mu.end(), 0.0);
    std::fill(var.begin(), var.end(), 0.0);
    for (const auto& s : strata) {
      double vol = s.volume(tdim);
      for (std::size_t e = 0; e < ne; ++e) {
        double m, vm;
        stats(s, e, m, vm);
        mu[e] += vol * m;
        var[e] += vol * vol * vm;
      }
    }
  };

  for (;;) {
    totals();
    // worst eps relative to the target
    std::size_t worst = 0;
    double worst_ratio = 0.0;
    for (std::size_t e = 0; e < ne; ++e) {
      double hw = 1.96 * std::sqrt(var[e]);
      double ratio = mu[e] > 0 ? hw / (opt.target_relative_ci * mu[e]) : 0.0;
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst = e;
      }
    }
    if (worst_ratio <= 1.0 || out.lines >= opt.max_lines) break;

    // refine the strata carrying the top part of that variance
    std::vector<std::pair<double, std::size_t>> contrib;
    for (std::size_t i = 0; i < strata.size(); ++i) {
      double m, vm;
      stats(strata[i], worst, m, vm);
      double vol = strata[i].volume(tdim);
      contrib.push_back({vol * vol * vm, i});
    }
    std::sort(contrib.begin(), contrib.end(), std::greater<>());
    double total = var[worst];
    double acc = 0.0;
    std::vector<std::size_t> chosen;
    for (const auto& [c, i] : contrib) {
      if (c <= 0.0 || acc >= 0.5 * total) break;
      acc += c;
      chosen.push_back(i);
    }
    if (chosen.empty()) break;
    std::sort(chosen.begin(), chosen.end());
    std::vector<Stratum> fresh;
    for (std::size_t i : chosen) {
      Stratum& s = strata[i];
      if (s.pos.size() < kSplitAt) {
        top_up(s, 2 * s.pos.size());
        continue;
      }
      // binary split along the axis whose halves differ most
      int dim = 0;
      double best = -1.0;
      for (int d = 0; d < tdim; ++d) {
        double mid = 0.5 * (s.lo[d] + s.hi[d]);
        double sum[2] = {0, 0};
        double n[2] = {0, 0};
        for (std::size_t j = 0; j < s.pos.size(); ++j) {
          int side = s.pos[j][d] >= mid;
          sum[side] += s.len[j][worst];
          n[side] += 1;
        }
        double score = n[0] > 0 && n[1] > 0 ? std::fabs(sum[0] / n[0] - sum[1] / n[1]) : 0.0;
        if (score > best) {
          best = score;
          dim = d;
        }
      }
      double mid = 0.5 * (s.lo[dim] + s.hi[dim]);
      Stratum kids[2];
      for (int k = 0; k < 2; ++k) {
        kids[k].lo = s.lo;
        kids[k].hi = s.hi;
      }
      kids[0].hi[dim] = mid;
      kids[1].lo[dim] = mid;
      for (std::size_t j = 0; j < s.pos.size(); ++j) {
        int k = s.pos[j][dim] >= mid;
        kids[k].pos.push_back(s.pos[j]);
        kids[k].len.push_back(std::move(s.len[j]));
      }
      for (auto& kid : kids) top_up(kid, kMinSamples);
      s = std::move(kids[0]);
      fresh.push_back(std::move(kids[1]));
    }
    for (auto& f : fresh) strata.push_back(std::move(f));
  }

  totals();
  out.strata = strata.size();
  for (std::size_t e = 0; e < ne; ++e) {
    SublevelPoint p;
    p.epsilon = eps[e];
    p.measure = mu[e] * idle;
    p.ci = 1.96 * std::sqrt(var[e]) * idle;
    p.accepted = p.measure > 0 && p.ci < opt.accept_relative_ci * p.measure;
    out.points.push_back(p);
  }
  if (out.accepted().empty()) {
    throw BudgetExceeded("no sublevel estimate reached the confidence target within " +
                         std::to_string(opt.max_lines) + " lines");
  }
  return out;
}

SublevelFit fit_sublevel(const SublevelSamples& s, int log_flag) {
  std::vector<double> x, y, w;
  for (const auto& p : s.accepted()) {
    double m = p.measure;
    if (log_flag) m /= std::log(1.0 / p.epsilon);
    x.push_back(std::log(p.epsilon));
    y.push_back(std::log(m));
  }
  SublevelFit f;
  f.points = x.size();
  if (x.size() < 3) return f;
  double c0, c1, cov00, cov01, cov11, sumsq;
  gsl_fit_linear(x.data(), 1, y.data(), 1, x.size(), &c0, &c1, &cov00, &cov01, &cov11, &sumsq);
  f.a = c1;
  f.intercept = c0;
  f.stderr_ = std::sqrt(cov11);
  return f;
}

ProbeResult integrability_probe(const Polynomial& phi, double p, const ProbeOptions& opt) {
  if (!(p > 0.0)) throw std::invalid_argument("integrability_probe needs p > 0");
  ProbeResult r;
  r.p = p;
  r.log_flag_used = opt.log_flag;
  if (opt.height) r.expected_a = 1.0 / *opt.height;
  r.samples = sublevel_measure(phi, opt.U, opt.eps_grid, opt.sublevel);
  SublevelFit f = fit_sublevel(r.samples, opt.log_flag);
  if (f.points < 4) throw BudgetExceeded("too few accepted sublevel points to fit");
  r.a = f.a;
  r.stderr_ = f.stderr_;
  double margin = 3.0 * f.stderr_ * p;
  double ap = f.a * p;
  if (ap - 1.0 >= margin && ap > 1.0) {
    r.verdict = Verdict::Converges;
  } else if (1.0 - ap >= margin && ap < 1.0) {
    r.verdict = Verdict::Diverges;
  } else {
    r.verdict = Verdict::Inconclusive;
  }
  r.boundary = std::fabs(ap - 1.0) < margin || std::fabs(ap - 1.0) < 1e-12;
  return r;
}

void write_sublevel_csv(std::ostream& os, const SublevelSamples& s) {
  os << "epsilon,measure,ci\n";
  os << std::setprecision(17);
  for (const auto& p : s.points) os << p.epsilon << ',' << p.measure << ',' << p.ci << '\n';
}

}  // namespace zerocurv::verify
