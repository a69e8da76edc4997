#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zerocurv/verify/oscillatory.hpp"

namespace zerocurv::verify {

using Direction = std::array<double, 4>;

struct DecaySample {
  double lambda = 0.0;
  Complex value{0, 0};
  double error = 0.0;
  bool accepted = false;
  /// why the sample was dropped ("" when accepted)
  std::string note;
};

struct DecaySamples {
  Direction direction{0, 0, 0, 1};
  std::vector<DecaySample> samples;

  std::vector<DecaySample> accepted() const;
  /// The last sample, error included, is below 1e-8 of the first: no power
  /// law with a moderate exponent gets there over the tested range.
  bool superpolynomial() const;
};

struct DecayScanOptions {
  double lambda_min = 64.0;
  double lambda_max = 262144.0;
  int points_per_octave = 4;
  OscillatoryOptions quadrature;
};

/// Normalizes `direction` and samples J(lambda * direction) on a geometric grid.
DecaySamples decay_scan(const OscillatoryPlan& plan, Direction direction, const DecayScanOptions& opt = {});

class FitError : public std::runtime_error {
 public:
  enum class Kind { InsufficientSamples, NoLinearWindow };
  FitError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct FitResult {
  double exponent = 0.0;
  int log_flag_used = 0;
  double stderr_ = 0.0;
  double r_squared = 0.0;
  double intercept = 0.0;
  std::array<double, 2> window{0.0, 0.0};
  std::size_t points = 0;
};

struct FitOptions {
  double window_octaves = 6.0;
  double min_r_squared = 0.995;
  /// fit the running maximum from the right (upper envelope) instead of |J|
  bool majorant = false;
};

/// Slope of log|J| (or log(|J| / log lambda)) against log lambda over the
/// largest-lambda window that passes the linearity test.
FitResult fit_decay(const DecaySamples& s, int log_flag, const FitOptions& opt = {});

/// Decay bound for an off-normal direction: -inf when the samples are
/// super-polynomial, else the slope of the running maximum over the top
/// window (no linearity gate, the majorant of an oscillating J is a staircase).
FitResult envelope_fit(const DecaySamples& s, const FitOptions& opt = {});

/// Plain least-squares fit of (x, y) pairs; stderr from the residual scatter.
FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// The 8 fixed pseudo-random unit directions with |xi'| <= delta * xi4.
std::vector<Direction> cone_directions(double delta = 0.1, int count = 8, unsigned seed = 20240607u);

void write_decay_csv(std::ostream& os, const DecaySamples& s);

}  // namespace zerocurv::verify
