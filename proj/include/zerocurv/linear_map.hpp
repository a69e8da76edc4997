#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "zerocurv/polynomial.hpp"
#include "zerocurv/scalar.hpp"

namespace zerocurv {

class SingularMatrix : public std::invalid_argument {
 public:
  SingularMatrix() : std::invalid_argument("matrix is singular") {}
};

using Vector = std::vector<Scalar>;
using Matrix = std::vector<Vector>;

/// Invertible n x n matrix (n = 2 or 3) acting by x -> A x.
class LinearMap {
 public:
  /// Throws SingularMatrix when det(entries) == 0.
  explicit LinearMap(Matrix entries);

  static LinearMap identity(int n);
  /// Matrix whose j-th column is columns[j].
  static LinearMap from_columns(const std::vector<Vector>& columns);

  int dim() const { return static_cast<int>(a_.size()); }
  const Scalar& operator()(int i, int j) const { return a_[i][j]; }
  const Matrix& entries() const { return a_; }
  const Scalar& det() const { return det_; }
  Vector column(int j) const;

  LinearMap inverse() const;
  friend LinearMap operator*(const LinearMap& l, const LinearMap& r);
  friend bool operator==(const LinearMap& l, const LinearMap& r) { return l.a_ == r.a_; }

  Vector apply(const Vector& x) const;

 private:
  Matrix a_;
  Scalar det_;
};

/// Determinant by Gaussian elimination over the scalar field.
Scalar determinant(Matrix m);

/// Rank over the scalar field.
int rank(Matrix m);

/// Basis of {v : m v = 0}, read off the reduced row echelon form; free
/// variables get unit values in increasing index order.
std::vector<Vector> null_space(Matrix m, int ncols);

/// x -> phi(A x) as an exact polynomial identity.
Polynomial compose_linear(const Polynomial& phi, const LinearMap& a);

}  // namespace zerocurv
