#include "zerocurv/verify/bump.hpp"

#include <cmath>
#include <map>

#include "zerocurv/verify/quadrature.hpp"

namespace zerocurv::verify {

namespace {

double unit_bump(double t) {
  double q = 1.0 - t * t;
  return q > 0 ? std::exp(-1.0 / q) : 0.0;
}

constexpr int kNodes = 24;
// |b^(k)| < 1e-20 beyond this frequency (the transform decays like
// exp(-sqrt(k)) k^{-3/4})
constexpr double kCutoff = 2500.0;

// Legendre expansions of the unit bump on panels of [0, 1]; b is even so
// the transform is 2 * sum over these of the cosine part.
struct Expansion {
  struct Group {
    double half_width;
    std::vector<double> mids;
    std::vector<std::vector<double>> coefs;
  };
  std::vector<Group> groups;

  Expansion() {
    LegendreRule rule(kNodes);
    std::map<double, Group> by_width;
    std::vector<std::pair<double, double>> stack{{0.0, 1.0}};
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      double m = 0.5 * (a + b);
      double s = 0.5 * (b - a);
      std::vector<double> c(kNodes, 0.0);
      for (int l = 0; l < kNodes; ++l) {
        for (int j = 0; j < kNodes; ++j) c[l] += rule.proj[l * kNodes + j] * unit_bump(m + s * rule.nodes[j]);
      }
      if (std::fabs(c[kNodes - 1]) + std::fabs(c[kNodes - 2]) > 2e-14 && s > 1e-4) {
        stack.push_back({a, m});
        stack.push_back({m, b});
        continue;
      }
      auto& g = by_width[s];
      g.half_width = s;
      g.mids.push_back(m);
      g.coefs.push_back(std::move(c));
    }
    for (auto& [w, g] : by_width) groups.push_back(std::move(g));
  }

  double transform(double k) const {
    if (std::fabs(k) > kCutoff) return 0.0;
    double jl[kNodes];
    double total = 0.0;
    for (const auto& g : groups) {
      spherical_bessel(kNodes - 1, k * g.half_width, jl);
      for (std::size_t p = 0; p < g.mids.size(); ++p) {
        // sum_l c_l 2 i^l j_l, cosine part only
        double re = 0.0;
        double im = 0.0;
        const auto& c = g.coefs[p];
        for (int l = 0; l < kNodes; l += 4) {
          re += c[l] * jl[l];
          if (l + 1 < kNodes) im += c[l + 1] * jl[l + 1];
          if (l + 2 < kNodes) re -= c[l + 2] * jl[l + 2];
          if (l + 3 < kNodes) im -= c[l + 3] * jl[l + 3];
        }
        double arg = k * g.mids[p];
        // Re(e^{i arg} (re + i im)) * 2 (Legendre factor) * s, doubled for the mirror half
        total += 2.0 * g.half_width * 2.0 * (std::cos(arg) * re - std::sin(arg) * im);
      }
    }
    return total;
  }
};

const Expansion& expansion() {
  static const Expansion e;
  return e;
}

}  // namespace

Bump::Bump(double radius) : r_(radius) {}

double Bump::operator()(double t) const { return unit_bump(t / r_); }

double Bump::integral() const { return fourier(0.0); }

double Bump::fourier(double k) const { return r_ * expansion().transform(k * r_); }

}  // namespace zerocurv::verify
