#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "zerocurv/polynomial.hpp"
#include "zerocurv/scalar.hpp"

namespace zerocurv {

using LatticePoint = std::array<long, 3>;

/// Raised for polynomials without a Newton polyhedron at the origin.
class SupportError : public std::invalid_argument {
 public:
  explicit SupportError(const std::string& what) : std::invalid_argument(what) {}
};

/// Exponents of the nonzero terms. In dimension 2 the third slot is zero.
struct SupportSet {
  int dim = 3;
  std::vector<LatticePoint> points;  // sorted, unique
};

/// Supporting half-space normal . t >= offset with a primitive,
/// componentwise non-negative integer normal.
struct Facet {
  LatticePoint normal{0, 0, 0};
  long offset = 0;

  friend bool operator==(const Facet&, const Facet&) = default;
};

/// conv(support) + R^n_+ described by its irredundant facets. The coordinate
/// facets t_i >= min_i are always present.
struct NewtonPolyhedron {
  int dim = 3;
  SupportSet generators;
  std::vector<Facet> facets;
  std::vector<LatticePoint> vertices;

  /// Facet-inequality membership test.
  bool contains(const std::array<Rational, 3>& t) const;
};

struct PrincipalData {
  Rational d;
  /// Indices into NewtonPolyhedron::facets that are tight at (d,...,d).
  std::vector<int> tight_facets;
  /// Support points lying on the principal face.
  std::vector<LatticePoint> face_points;
  /// Coordinate directions e_k contained in the face's recession cone.
  std::vector<int> rays;
  int face_dim = 0;
  bool compact = true;
  /// Two-dimensional compact-edge case only.
  std::optional<std::array<Rational, 2>> kappa;
  std::optional<Rational> homogeneous_distance;

  bool is_vertex() const { return face_dim == 0; }
};

/// Exponents of the nonzero terms; requires phi != 0 and phi(0) == 0.
SupportSet taylor_support(const Polynomial& phi);

NewtonPolyhedron build_polyhedron(const SupportSet& s);

/// Least t with (t,...,t) in the polyhedron.
Rational newton_distance(const NewtonPolyhedron& n);

/// Minimal face containing (d,...,d) = intersection of the facets tight there.
PrincipalData principal_face(const NewtonPolyhedron& n, const Rational& d);

/// Terms of phi whose exponents lie on the principal face.
Polynomial principal_part(const Polynomial& phi, const PrincipalData& p);

/// Convenience: support, polyhedron, distance and principal face at once.
struct NewtonData {
  NewtonPolyhedron polyhedron;
  PrincipalData principal;
};
NewtonData newton_data(const Polynomial& phi);

}  // namespace zerocurv
