#include "zerocurv/verify/decay.hpp"

#include <gsl/gsl_fit.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>

namespace zerocurv::verify {

std::vector<DecaySample> DecaySamples::accepted() const {
  std::vector<DecaySample> out;
  for (const auto& s : samples) {
    if (s.accepted) out.push_back(s);
  }
  return out;
}

bool DecaySamples::superpolynomial() const {
  if (samples.size() < 2) return false;
  double first = std::abs(samples.front().value);
  if (!(first > 0)) return false;
  const auto& last = samples.back();
  return std::abs(last.value) + last.error <= 1e-8 * first;
}

DecaySamples decay_scan(const OscillatoryPlan& plan, Direction dir, const DecayScanOptions& opt) {
  double norm = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2] + dir[3] * dir[3]);
  if (!(norm > 0)) throw std::invalid_argument("direction must be nonzero");
  for (auto& d : dir) d /= norm;
  DecaySamples out;
  out.direction = dir;
  int steps = static_cast<int>(std::lround(std::log2(opt.lambda_max / opt.lambda_min) * opt.points_per_octave));
  for (int i = 0; i <= steps; ++i) {
    DecaySample s;
    s.lambda = opt.lambda_min * std::exp2(static_cast<double>(i) / opt.points_per_octave);
    std::array<double, 4> xi{s.lambda * dir[0], s.lambda * dir[1], s.lambda * dir[2], s.lambda * dir[3]};
    try {
      auto v = eval_oscillatory(plan, xi, opt.quadrature);
      // tighten once relative to the value found, unless it sits near the noise floor
      double floor = 1e-15 * plan.bump().integral();
      if (v.error > 1e-4 * std::abs(v.value) && std::abs(v.value) > 1e3 * floor) {
        OscillatoryOptions tight = opt.quadrature;
        tight.abs_tol = 1e-5 * std::abs(v.value);
        try {
          v = eval_oscillatory(plan, xi, tight);
        } catch (const ToleranceNotMet&) {
        }
      }
      s.value = v.value;
      s.error = v.error;
      s.accepted = v.error < 0.1 * std::abs(v.value);
      if (!s.accepted) s.note = "error above 10% of value";
    } catch (const ToleranceNotMet& e) {
      s.note = e.what();
    }
    out.samples.push_back(std::move(s));
  }
  return out;
}

FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  FitResult r;
  std::size_t n = x.size();
  r.points = n;
  if (n < 2) return r;
  double c0, c1, cov00, cov01, cov11, sumsq;
  gsl_fit_linear(x.data(), 1, y.data(), 1, n, &c0, &c1, &cov00, &cov01, &cov11, &sumsq);
  r.exponent = c1;
  r.intercept = c0;
  r.stderr_ = std::sqrt(cov11);
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);
  double tss = 0.0;
  for (double v : y) tss += (v - mean) * (v - mean);
  r.r_squared = tss > 0 ? 1.0 - sumsq / tss : 1.0;
  return r;
}

FitResult fit_decay(const DecaySamples& s, int log_flag, const FitOptions& opt) {
  auto acc = s.accepted();
  if (acc.size() < 8) {
    throw FitError(FitError::Kind::InsufficientSamples,
                   "need at least 8 accepted samples, have " + std::to_string(acc.size()));
  }
  std::vector<double> lx, ly;
  for (const auto& a : acc) {
    double mag = std::abs(a.value);
    if (log_flag) mag /= std::log(a.lambda);
    lx.push_back(std::log(a.lambda));
    ly.push_back(std::log(mag));
  }
  if (opt.majorant) {
    for (std::size_t i = ly.size() - 1; i-- > 0;) ly[i] = std::max(ly[i], ly[i + 1]);
  }
  const double span = opt.window_octaves * std::log(2.0);
  // windows ending at each sample, from the top down
  for (std::size_t end = lx.size(); end-- > 0;) {
    std::size_t begin = end;
    while (begin > 0 && lx[end] - lx[begin - 1] <= span + 1e-9) --begin;
    if (lx[end] - lx[begin] < span - 1e-9) break;  // window no longer spans enough octaves
    std::vector<double> wx(lx.begin() + begin, lx.begin() + end + 1);
    std::vector<double> wy(ly.begin() + begin, ly.begin() + end + 1);
    FitResult r = fit_line(wx, wy);
    if (r.r_squared >= opt.min_r_squared) {
      r.log_flag_used = log_flag;
      r.window = {std::exp(wx.front()), std::exp(wx.back())};
      return r;
    }
  }
  throw FitError(FitError::Kind::NoLinearWindow, "no window passes the linearity test");
}

FitResult envelope_fit(const DecaySamples& s, const FitOptions& opt) {
  if (s.superpolynomial()) {
    FitResult r;
    r.exponent = -std::numeric_limits<double>::infinity();
    r.r_squared = 1.0;
    r.points = s.samples.size();
    r.window = {s.samples.front().lambda, s.samples.back().lambda};
    return r;
  }
  FitOptions o = opt;
  o.majorant = true;
  o.min_r_squared = -std::numeric_limits<double>::infinity();
  return fit_decay(s, 0, o);
}

std::vector<Direction> cone_directions(double delta, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.25, 1.0);
  std::vector<Direction> out;
  for (int i = 0; i < count; ++i) {
    std::array<double, 3> v{normal(rng), normal(rng), normal(rng)};
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    double rad = delta * unit(rng);
    Direction d{rad * v[0] / n, rad * v[1] / n, rad * v[2] / n, 1.0};
    double norm = std::sqrt(1.0 + rad * rad);
    for (auto& c : d) c /= norm;
    out.push_back(d);
  }
  return out;
}

void write_decay_csv(std::ostream& os, const DecaySamples& s) {
  os << "lambda,re,im,abs,err\n";
  os << std::setprecision(17);
  for (const auto& x : s.samples) {
    os << x.lambda << ',' << x.value.real() << ',' << x.value.imag() << ',' << std::abs(x.value) << ','
       << x.error << '\n';
  }
}

}  // namespace zerocurv::verify
