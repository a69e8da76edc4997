#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zerocurv/polynomial.hpp"

namespace zerocurv {

/// a / b when b divides a exactly, otherwise nullopt. Any variable count.
std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b);

/// Greatest common divisor of bivariate rational polynomials, normalized so
/// that its lex-leading coefficient is 1. gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// p = c * prod F_k^k with F_k square-free and pairwise coprime (bivariate,
/// rational). Returns (F_k, k) for nonconstant F_k.
std::vector<std::pair<Polynomial, int>> square_free_layers(const Polynomial& p);

/// p = factor^multiplicity * cofactor with factor(0) = 0, grad factor(0) != 0
/// and cofactor(0) != 0, multiplicity >= 2.
struct SmoothPower {
  Polynomial factor{2};
  int multiplicity = 0;
  Polynomial cofactor{2};
};

/// Detects the shape above for a bivariate rational polynomial; nullopt when
/// p has any other structure at the origin.
std::optional<SmoothPower> smooth_power_at_origin(const Polynomial& p);

}  // namespace zerocurv
