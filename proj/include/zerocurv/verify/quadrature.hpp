#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace zerocurv::verify {

using Complex = std::complex<double>;

/// Raised when an integral needs more work than its evaluation budget allows.
class ToleranceNotMet : public std::runtime_error {
 public:
  explicit ToleranceNotMet(const std::string& what) : std::runtime_error(what) {}
};

struct QuadResult {
  Complex value{0.0, 0.0};
  double error = 0.0;
  std::size_t panels = 0;
};

/// Spherical Bessel functions j_0..j_lmax at real x (any sign).
void spherical_bessel(int lmax, double x, std::span<double> out);

/// Gauss-Legendre rule with projection onto Legendre polynomials.
struct LegendreRule {
  explicit LegendreRule(int n);
  int n;
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
  /// proj[l * n + j] = (2l+1)/2 * w_j * P_l(u_j)
  std::vector<double> proj;
};

/// Shared evaluation counter; throws ToleranceNotMet once the limit is hit.
struct Budget {
  std::size_t limit = 400'000'000;
  std::size_t used = 0;
  void spend(std::size_t n);
};

/// Amplitude values (and optional per-node error bounds) at the given nodes.
using AmplitudeFn = std::function<void(std::span<const double> x, std::span<Complex> value, std::span<double> error)>;
/// Real phase values at the given nodes.
using PhaseFn = std::function<void(std::span<const double> x, std::span<double> value)>;

struct FilonOptions {
  double abs_tol = 1e-10;
  /// panels whose phase deviates from its chord by more than this are split
  double max_residual_phase = 1.5;
  int max_depth = 40;
  int nodes = 24;
  Budget* budget = nullptr;
};

/// Adaptive Filon-Legendre rule for int_a^b A(x) e^{i Phi(x)} dx: on each
/// panel the phase is split into its chord plus a small residual, the
/// remaining smooth factor is expanded in Legendre polynomials and the
/// chord part integrated exactly.
QuadResult adaptive_filon(const AmplitudeFn& amplitude, const PhaseFn& phase, double a, double b,
                          const FilonOptions& opt);

}  // namespace zerocurv::verify
