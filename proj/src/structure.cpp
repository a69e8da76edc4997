#include "zerocurv/structure.hpp"

#include <algorithm>
#include <map>

namespace zerocurv {

const char* to_string(StructureError::Kind kind) {
  switch (kind) {
    case StructureError::Kind::Precondition: return "Precondition";
    case StructureError::Kind::NotDegenerate: return "NotDegenerate";
    case StructureError::Kind::NoForm: return "NoForm";
    case StructureError::Kind::CandidateIrrational: return "CandidateIrrational";
    case StructureError::Kind::Unrepresentable: return "Unrepresentable";
    case StructureError::Kind::InternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

const char* to_string(DecompositionCase c) {
  switch (c) {
    case DecompositionCase::OneVar: return "OneVar";
    case DecompositionCase::TwoVar: return "TwoVar";
    case DecompositionCase::Form: return "Form";
  }
  return "Unknown";
}

namespace {

Vector unit_vector(int k) {
  Vector v(3, Scalar(0));
  v[k] = Scalar(1);
  return v;
}

Vector cross(const Vector& a, const Vector& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Scalar bilinear(const Matrix& m, const Vector& u, const Vector& v) {
  Scalar acc(0);
  for (int i = 0; i < 3; ++i) {
    if (u[i].is_zero()) continue;
    for (int j = 0; j < 3; ++j) {
      if (!v[j].is_zero() && !m[i][j].is_zero()) acc += u[i] * m[i][j] * v[j];
    }
  }
  return acc;
}

// Prepends standard unit vectors to `tail` until the columns span R^3.
std::vector<Vector> complete_basis(const std::vector<Vector>& tail) {
  std::vector<Vector> head;
  for (int k = 0; k < 3 && head.size() + tail.size() < 3; ++k) {
    Matrix rows;
    for (const auto& v : head) rows.push_back(v);
    for (const auto& v : tail) rows.push_back(v);
    int before = rank(rows);
    rows.push_back(unit_vector(k));
    if (rank(rows) > before) head.push_back(unit_vector(k));
  }
  std::vector<Vector> cols = head;
  cols.insert(cols.end(), tail.begin(), tail.end());
  return cols;
}

// Univariate polynomial from the terms of g with the given (x2, x3) exponents.
Polynomial slice_in_x1(const Polynomial& g, int e2, int e3) {
  Polynomial q(1);
  for (const auto& [m, c] : g.terms()) {
    if (m.e[1] == e2 && m.e[2] == e3) q.add_term(Monomial{{m.e[0], 0, 0}}, c);
  }
  return q;
}

bool in_form_shape(const Polynomial& g) {
  for (const auto& [m, c] : g.terms()) {
    if (m.e[1] + m.e[2] > 1) return false;
  }
  return true;
}

LinearMap permute_columns(const LinearMap& a, const std::array<int, 3>& order) {
  std::vector<Vector> cols;
  for (int j : order) cols.push_back(a.column(j));
  return LinearMap::from_columns(cols);
}

// Reads the decomposition off phi(Ax) after moving the variables phi(Ax)
// depends on to the front. Returns nullopt when no shape applies.
std::optional<Decomposition> classify(const Polynomial& phi, LinearMap a) {
  Polynomial g = compose_linear(phi, a);
  if (g.is_zero()) return std::nullopt;
  std::array<int, 3> order{0, 1, 2};
  std::stable_partition(order.begin(), order.end(), [&](int v) { return g.depends_on(v); });
  if (order != std::array<int, 3>{0, 1, 2}) {
    a = permute_columns(a, order);
    g = compose_linear(phi, a);
  }
  Decomposition dec;
  if (!g.depends_on(1) && !g.depends_on(2)) {
    dec.kind = DecompositionCase::OneVar;
    dec.nu = g.order();
    Polynomial q(1);
    for (const auto& [m, c] : g.terms()) q.add_term(Monomial{{m.e[0] - dec.nu, 0, 0}}, c);
    dec.q = q;
  } else if (!g.depends_on(2)) {
    dec.kind = DecompositionCase::TwoVar;
    dec.psi = g.with_nvars(2);
  } else if (in_form_shape(g)) {
    dec.kind = DecompositionCase::Form;
    dec.forms = {slice_in_x1(g, 0, 0), slice_in_x1(g, 1, 0), slice_in_x1(g, 0, 1)};
    for (int i = 0; i < 3; ++i) dec.nus[i] = root_multiplicity_at_zero(dec.forms[i]);
    if (dec.nus[2] < dec.nus[1]) {
      // keep nu3 >= nu2 by relabeling x2 <-> x3
      a = permute_columns(a, {0, 2, 1});
      g = compose_linear(phi, a);
      dec.forms = {slice_in_x1(g, 0, 0), slice_in_x1(g, 1, 0), slice_in_x1(g, 0, 1)};
      for (int i = 0; i < 3; ++i) dec.nus[i] = root_multiplicity_at_zero(dec.forms[i]);
    }
  } else {
    return std::nullopt;
  }
  dec.a = a;
  dec.transformed = g;
  return dec;
}

}  // namespace

Multiplicity root_multiplicity_at_zero(const Polynomial& q) {
  if (q.is_zero()) return std::nullopt;
  int low = q.terms().begin()->first.e[0];
  for (const auto& [m, c] : q.terms()) low = std::min(low, m.e[0]);
  return low;
}

HessianReport hessian_vanishes(const Polynomial& phi) {
  if (phi.nvars() != 3) throw StructureError(StructureError::Kind::Precondition, "need 3 variables");
  HessianReport rep;
  rep.determinant = hessian_det(phi);
  rep.vanishes = rep.determinant.is_zero();
  if (rep.vanishes) return rep;
  // A nonzero polynomial of degree k cannot vanish on the whole grid {0..k}^3,
  // so growing cubes always terminate.
  int limit = rep.determinant.degree() + 1;
  for (int r = 0; r <= limit; ++r) {
    for (int x = -r; x <= r; ++x) {
      for (int y = -r; y <= r; ++y) {
        for (int z = -r; z <= r; ++z) {
          if (std::max({std::abs(x), std::abs(y), std::abs(z)}) != r) continue;
          std::array<Scalar, 3> pt{Scalar(x), Scalar(y), Scalar(z)};
          Scalar v = rep.determinant.evaluate(pt);
          if (!v.is_zero()) {
            rep.witness = std::array<Rational, 3>{Rational(x), Rational(y), Rational(z)};
            rep.witness_value = v.as_rational();
            return rep;
          }
        }
      }
    }
  }
  throw StructureError(StructureError::Kind::InternalConsistency,
                       "nonzero Hessian determinant vanished on the search grid");
}

std::vector<Vector> kernel_directions(const Polynomial& phi) {
  if (phi.nvars() != 3) throw StructureError(StructureError::Kind::Precondition, "need 3 variables");
  std::array<Polynomial, 3> grad{derivative(phi, 0), derivative(phi, 1), derivative(phi, 2)};
  std::map<Monomial, Vector, GradedLex> rows;
  for (int j = 0; j < 3; ++j) {
    for (const auto& [m, c] : grad[j].terms()) {
      auto [it, inserted] = rows.try_emplace(m, Vector(3, Scalar(0)));
      it->second[j] = c;
    }
  }
  Matrix sys;
  for (auto& [m, row] : rows) sys.push_back(row);
  if (sys.empty()) return {unit_vector(0), unit_vector(1), unit_vector(2)};
  return null_space(sys, 3);
}

Decomposition reduce_variables(const Polynomial& phi, const std::vector<Vector>& dirs) {
  if (dirs.empty() || dirs.size() > 2) {
    throw StructureError(StructureError::Kind::Precondition,
                         "reduce_variables needs one or two kernel directions");
  }
  LinearMap a = LinearMap::from_columns(complete_basis(dirs));
  Polynomial g = compose_linear(phi, a);
  int kept = 3 - static_cast<int>(dirs.size());
  for (int v = kept; v < 3; ++v) {
    if (g.depends_on(v)) {
      throw StructureError(StructureError::Kind::InternalConsistency,
                           "phi(Ax) still depends on an eliminated variable");
    }
  }
  Decomposition dec;
  dec.a = a;
  dec.transformed = g;
  if (kept == 1) {
    dec.kind = DecompositionCase::OneVar;
    dec.nu = g.order();
    Polynomial q(1);
    for (const auto& [m, c] : g.terms()) q.add_term(Monomial{{m.e[0] - dec.nu, 0, 0}}, c);
    dec.q = q;
  } else {
    dec.kind = DecompositionCase::TwoVar;
    dec.psi = g.with_nvars(2);
  }
  return dec;
}

std::vector<Matrix> hessian_coefficient_matrices(const Polynomial& phi) {
  auto h = hessian_matrix(phi);
  std::map<Monomial, Matrix, GradedLex> by_mono;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (const auto& [m, c] : h[i][j].terms()) {
        auto [it, inserted] = by_mono.try_emplace(m, Matrix(3, Vector(3, Scalar(0))));
        it->second[i][j] = c;
      }
    }
  }
  std::vector<Matrix> out;
  for (auto& [m, mat] : by_mono) out.push_back(std::move(mat));
  return out;
}

namespace {

// Normals of the (at most two) planes on which the quadratic form of m vanishes.
std::vector<Vector> isotropic_plane_normals(const Matrix& m, int r) {
  if (r == 1) {
    for (const auto& row : m) {
      if (std::any_of(row.begin(), row.end(), [](const Scalar& s) { return !s.is_zero(); })) {
        return {row};
      }
    }
    return {};
  }
  // rank 2: restrict to a complement of the kernel and split the binary form
  auto ker = null_space(m, 3);
  const Vector& k = ker.front();
  std::vector<Vector> comp = complete_basis({k});
  const Vector& u = comp[0];
  const Vector& v = comp[1];
  Scalar a = bilinear(m, u, u);
  Scalar b = bilinear(m, u, v);
  Scalar c = bilinear(m, v, v);
  Scalar disc = b * b - a * c;
  if (disc.sign() <= 0) return {};  // definite: no real isotropic plane
  if (!disc.is_rational()) {
    throw StructureError(StructureError::Kind::CandidateIrrational,
                         "isotropic plane needs sqrt of " + disc.str());
  }
  const Rational& dq = disc.as_rational();
  Integer prod = dq.get_num() * dq.get_den();
  auto [free, root] = square_free_split(prod);
  Scalar sqrt_disc;
  if (free == 1) {
    sqrt_disc = Scalar(Rational(root, dq.get_den()));
  } else {
    if (!free.fits_slong_p()) {
      throw StructureError(StructureError::Kind::CandidateIrrational,
                           "radicand too large: " + free.get_str());
    }
    Rational scale(root, dq.get_den());
    scale.canonicalize();
    sqrt_disc = Scalar(Rational(0), scale, free.get_si());
  }
  std::vector<Vector> dirs;
  auto combo = [&](const Scalar& s, const Scalar& t) {
    Vector w(3);
    for (int i = 0; i < 3; ++i) w[i] = s * u[i] + t * v[i];
    return w;
  };
  if (!a.is_zero()) {
    dirs.push_back(combo((-b + sqrt_disc) / a, Scalar(1)));
    dirs.push_back(combo((-b - sqrt_disc) / a, Scalar(1)));
  } else {
    dirs.push_back(combo(Scalar(1), Scalar(0)));
    dirs.push_back(combo(-c, Scalar(2) * b));
  }
  std::vector<Vector> normals;
  for (const auto& d : dirs) normals.push_back(cross(d, k));
  return normals;
}

}  // namespace

std::optional<Decomposition> detect_form(const Polynomial& phi) {
  auto mats = hessian_coefficient_matrices(phi);
  int best = -1;
  int best_rank = 0;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    int r = rank(mats[i]);
    if (r > best_rank) {
      best_rank = r;
      best = static_cast<int>(i);
    }
  }
  if (best < 0 || best_rank == 3) return std::nullopt;
  for (const auto& normal : isotropic_plane_normals(mats[best], best_rank)) {
    auto basis = null_space(Matrix{normal}, 3);
    if (basis.size() != 2) continue;
    bool isotropic = true;
    for (const auto& m : mats) {
      if (!bilinear(m, basis[0], basis[0]).is_zero() || !bilinear(m, basis[0], basis[1]).is_zero() ||
          !bilinear(m, basis[1], basis[1]).is_zero()) {
        isotropic = false;
        break;
      }
    }
    if (!isotropic) continue;
    LinearMap a = LinearMap::from_columns(complete_basis(basis));
    auto dec = classify(phi, a);
    if (!dec) {
      throw StructureError(StructureError::Kind::InternalConsistency,
                           "isotropic plane did not produce the form shape");
    }
    return dec;
  }
  return std::nullopt;
}

Decomposition decompose(const Polynomial& phi) {
  if (phi.nvars() != 3) throw StructureError(StructureError::Kind::Precondition, "need 3 variables");
  if (phi.is_zero()) throw StructureError(StructureError::Kind::Precondition, "zero polynomial");
  if (phi.order() < 2) {
    throw StructureError(StructureError::Kind::Precondition,
                         "phi(0) and grad phi(0) must vanish (found a term of degree < 2)");
  }
  auto rep = hessian_vanishes(phi);
  if (!rep.vanishes) {
    throw StructureError(StructureError::Kind::NotDegenerate,
                         "Hessian determinant is not identically zero");
  }
  auto dirs = kernel_directions(phi);
  Decomposition dec;
  if (!dirs.empty()) {
    dec = reduce_variables(phi, dirs);
  } else {
    std::optional<Decomposition> form = detect_form(phi);
    if (!form) {
      throw StructureError(StructureError::Kind::Unrepresentable,
                           "no kernel direction and no isotropic plane for " + phi.str());
    }
    dec = *form;
  }
  if (!verify_decomposition(phi, dec)) {
    throw StructureError(StructureError::Kind::InternalConsistency, "decomposition failed to verify");
  }
  return dec;
}

Decomposition decompose_with_matrix(const Polynomial& phi, const LinearMap& a) {
  if (a.dim() != 3) throw StructureError(StructureError::Kind::Precondition, "need a 3x3 matrix");
  auto dec = classify(phi, a);
  if (!dec) {
    throw StructureError(StructureError::Kind::Unrepresentable,
                         "phi(Ax) has none of the three structural shapes");
  }
  return *dec;
}

bool verify_decomposition(const Polynomial& phi, const Decomposition& dec) {
  Polynomial g = compose_linear(phi, dec.a);
  if (g != dec.transformed) return false;
  auto x1 = Polynomial::variable(3, 0);
  auto lift = [](const Polynomial& q) {
    Polynomial r(3);
    for (const auto& [m, c] : q.terms()) r.add_term(Monomial{{m.e[0], 0, 0}}, c);
    return r;
  };
  switch (dec.kind) {
    case DecompositionCase::OneVar:
      if (dec.nu < 0 || dec.q.constant_term().is_zero()) return false;
      return g == x1.pow(dec.nu) * lift(dec.q);
    case DecompositionCase::TwoVar:
      return !g.depends_on(2) && g.with_nvars(2) == dec.psi;
    case DecompositionCase::Form: {
      if (dec.forms[1].is_zero() || dec.forms[2].is_zero()) return false;
      if (dec.nus[2] < dec.nus[1]) return false;
      Polynomial rebuilt = lift(dec.forms[0]) + lift(dec.forms[1]) * Polynomial::variable(3, 1) +
                           lift(dec.forms[2]) * Polynomial::variable(3, 2);
      return rebuilt == g;
    }
  }
  return false;
}

}  // namespace zerocurv
