#include "zerocurv/linear_map.hpp"

#include <utility>

namespace zerocurv {

namespace {

// In-place reduced row echelon form over the first ncols columns (row
// operations act on the whole row); returns pivot columns.
std::vector<int> rref(Matrix& m, int ncols) {
  std::vector<int> pivots;
  int rows = static_cast<int>(m.size());
  int r = 0;
  for (int c = 0; c < ncols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i) {
      if (!m[i][c].is_zero()) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    int width = static_cast<int>(m[r].size());
    Scalar inv = m[r][c].inverse();
    for (int j = c; j < width; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (int j = c; j < width; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Scalar determinant(Matrix m) {
  int n = static_cast<int>(m.size());
  Scalar det(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i) {
      if (!m[i][c].is_zero()) {
        p = i;
        break;
      }
    }
    if (p < 0) return Scalar(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Scalar inv = m[c][c].inverse();
    for (int i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      Scalar f = m[i][c] * inv;
      for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

int rank(Matrix m) {
  if (m.empty()) return 0;
  return static_cast<int>(rref(m, static_cast<int>(m[0].size())).size());
}

std::vector<Vector> null_space(Matrix m, int ncols) {
  auto pivots = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(ncols, Scalar(0));
    v[f] = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

LinearMap::LinearMap(Matrix entries) : a_(std::move(entries)) {
  int n = static_cast<int>(a_.size());
  if (n < 1 || n > 3) throw std::invalid_argument("linear map dimension must be 1..3");
  for (const auto& row : a_) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("matrix must be square");
  }
  det_ = determinant(a_);
  if (det_.is_zero()) throw SingularMatrix();
}

LinearMap LinearMap::identity(int n) {
  Matrix m(n, Vector(n, Scalar(0)));
  for (int i = 0; i < n; ++i) m[i][i] = Scalar(1);
  return LinearMap(std::move(m));
}

LinearMap LinearMap::from_columns(const std::vector<Vector>& columns) {
  int n = static_cast<int>(columns.size());
  Matrix m(n, Vector(n, Scalar(0)));
  for (int j = 0; j < n; ++j) {
    if (static_cast<int>(columns[j].size()) != n) throw std::invalid_argument("column size");
    for (int i = 0; i < n; ++i) m[i][j] = columns[j][i];
  }
  return LinearMap(std::move(m));
}

Vector LinearMap::column(int j) const {
  Vector v;
  for (const auto& row : a_) v.push_back(row[j]);
  return v;
}

LinearMap LinearMap::inverse() const {
  int n = dim();
  Matrix aug(n, Vector(2 * n, Scalar(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = a_[i][j];
    aug[i][n + i] = Scalar(1);
  }
  rref(aug, n);
  Matrix inv(n, Vector(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  }
  return LinearMap(std::move(inv));
}

LinearMap operator*(const LinearMap& l, const LinearMap& r) {
  int n = l.dim();
  if (r.dim() != n) throw std::invalid_argument("dimension mismatch");
  Matrix m(n, Vector(n, Scalar(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) m[i][j] += l.a_[i][k] * r.a_[k][j];
    }
  }
  return LinearMap(std::move(m));
}

Vector LinearMap::apply(const Vector& x) const {
  int n = dim();
  Vector y(n, Scalar(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) y[i] += a_[i][j] * x[j];
  }
  return y;
}

Polynomial compose_linear(const Polynomial& phi, const LinearMap& a) {
  int n = a.dim();
  if (phi.nvars() != n) throw std::invalid_argument("compose_linear: dimension mismatch");
  std::vector<Polynomial> images;
  for (int i = 0; i < n; ++i) {
    Polynomial row(n);
    for (int j = 0; j < n; ++j) {
      Monomial m;
      m[j] = 1;
      row.add_term(m, a(i, j));
    }
    images.push_back(std::move(row));
  }
  return compose(phi, images);
}

}  // namespace zerocurv
