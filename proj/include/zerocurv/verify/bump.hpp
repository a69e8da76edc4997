#pragma once

#include <complex>
#include <vector>

namespace zerocurv::verify {

/// Standard bump exp(-1/(1-(t/r)^2)) on (-r, r), zero outside.
class Bump {
 public:
  explicit Bump(double radius = 1.0);

  double radius() const { return r_; }
  double operator()(double t) const;
  /// int b(t) dt.
  double integral() const;
  /// int e^{ikt} b(t) dt (real, since b is even).
  double fourier(double k) const;

 private:
  double r_;
};

}  // namespace zerocurv::verify
