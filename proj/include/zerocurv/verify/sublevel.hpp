#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zerocurv/polynomial.hpp"

namespace zerocurv::verify {

struct Box {
  std::array<double, 3> lo{-0.5, -0.5, -0.5};
  std::array<double, 3> hi{0.5, 0.5, 0.5};

  static Box cube(double half) { return {{-half, -half, -half}, {half, half, half}}; }
  double volume() const { return (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]); }
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SublevelPoint {
  double epsilon = 0.0;
  double measure = 0.0;
  /// 95% half-width
  double ci = 0.0;
  bool accepted = false;
};

struct SublevelSamples {
  std::vector<SublevelPoint> points;  // epsilon increasing
  int line_axis = 0;                  // axis integrated exactly along each sample line
  std::size_t lines = 0;              // sample lines used
  std::size_t strata = 0;

  std::vector<SublevelPoint> accepted() const;
};

struct SublevelOptions {
  /// stop once every half-width is below this fraction of its estimate
  double target_relative_ci = 0.01;
  /// points with a larger relative half-width are not accepted
  double accept_relative_ci = 0.05;
  std::size_t max_lines = 400'000;
  std::uint64_t seed = 20240607u;
};

/// Geometric grid eps_min .. eps_max with `per_octave` points per factor 2.
std::vector<double> epsilon_grid(double eps_min = 0x1p-40, double eps_max = 0x1p-12, int per_octave = 1);

/// Estimates |{x in U : |phi(x)| <= eps}| for every eps of the grid.
///
/// Each sample is a line parallel to one axis on which the sublevel length is
/// computed from the roots of phi -+ eps; the transverse positions are drawn
/// by stratified Monte Carlo with strata refined where the variance is. All
/// eps share the same lines, so the estimates are monotone in eps.
SublevelSamples sublevel_measure(const Polynomial& phi, const Box& U, const std::vector<double>& eps_grid,
                                 const SublevelOptions& opt = {});

enum class Verdict { Converges, Diverges, Inconclusive };
std::string to_string(Verdict v);

struct ProbeResult {
  Verdict verdict = Verdict::Inconclusive;
  double p = 0.0;
  /// fitted growth exponent of the sublevel measure
  double a = 0.0;
  double stderr_ = 0.0;
  int log_flag_used = 0;
  /// a * p within 3 standard errors of 1
  bool boundary = false;
  std::optional<double> expected_a;  // 1/h when h is known
  SublevelSamples samples;
};

struct ProbeOptions {
  std::vector<double> eps_grid = epsilon_grid();
  Box U{};
  SublevelOptions sublevel{};
  /// fit mu / log(1/eps) instead of mu
  int log_flag = 0;
  std::optional<double> height;
};

/// Fits mu(eps) ~ c eps^a (log 1/eps)^log_flag and compares a p with 1.
ProbeResult integrability_probe(const Polynomial& phi, double p, const ProbeOptions& opt = {});

/// Slope and its standard error of log mu against log eps over accepted points.
struct SublevelFit {
  double a = 0.0;
  double stderr_ = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};
SublevelFit fit_sublevel(const SublevelSamples& s, int log_flag);

void write_sublevel_csv(std::ostream& os, const SublevelSamples& s);

}  // namespace zerocurv::verify
