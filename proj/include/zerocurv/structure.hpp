#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zerocurv/linear_map.hpp"
#include "zerocurv/polynomial.hpp"

namespace zerocurv {

/// Failure of the structural decomposition. Every kind maps to a CLI exit code.
class StructureError : public std::runtime_error {
 public:
  enum class Kind {
    Precondition,          // phi(0) != 0, grad phi(0) != 0, wrong arity
    NotDegenerate,         // det D^2 phi is not identically zero
    NoForm,                // no isotropic plane validates
    CandidateIrrational,   // plane needs a field beyond Q(sqrt(D))
    Unrepresentable,       // neither reduction nor form detection succeeded
    InternalConsistency,   // a verified identity failed (bug)
  };

  StructureError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(StructureError::Kind kind);

struct HessianReport {
  bool vanishes = false;
  Polynomial determinant{3};
  /// Lattice point with nonzero determinant, when not vanishing.
  std::optional<std::array<Rational, 3>> witness;
  std::optional<Rational> witness_value;
};

HessianReport hessian_vanishes(const Polynomial& phi);

/// Multiplicity of x1 = 0 as a root; nullopt stands for the identically zero
/// polynomial (the "infinite" multiplicity).
using Multiplicity = std::optional<int>;

enum class DecompositionCase { OneVar, TwoVar, Form };
const char* to_string(DecompositionCase c);

/// Witness that phi(Ax) has one of the three structural shapes.
struct Decomposition {
  DecompositionCase kind = DecompositionCase::OneVar;
  LinearMap a = LinearMap::identity(3);
  /// phi(Ax), trivariate.
  Polynomial transformed{3};

  /// OneVar: phi(Ax) = x1^nu * q(x1), q(0) != 0 (q univariate).
  int nu = 0;
  Polynomial q{1};

  /// TwoVar: phi(Ax) = psi(x1, x2).
  Polynomial psi{2};

  /// Form: phi(Ax) = Q1(x1) + Q2(x1) x2 + Q3(x1) x3 with nus[2] >= nus[1].
  std::array<Polynomial, 3> forms{Polynomial(1), Polynomial(1), Polynomial(1)};
  std::array<Multiplicity, 3> nus;
};

/// Basis of {v : v . grad phi == 0}.
std::vector<Vector> kernel_directions(const Polynomial& phi);

/// OneVar (two directions) or TwoVar (one direction) from kernel directions.
Decomposition reduce_variables(const Polynomial& phi, const std::vector<Vector>& dirs);

/// Form case via the isotropic plane of the Hessian coefficient matrices.
/// Returns nullopt when no candidate plane validates.
std::optional<Decomposition> detect_form(const Polynomial& phi);

/// Full decomposition; throws StructureError.
Decomposition decompose(const Polynomial& phi);

/// Checks a user-supplied matrix: phi(Ax) must have one of the three shapes.
/// Throws StructureError(Unrepresentable) otherwise.
Decomposition decompose_with_matrix(const Polynomial& phi, const LinearMap& a);

/// Re-derives phi(Ax) and confirms the declared shape as an exact identity.
bool verify_decomposition(const Polynomial& phi, const Decomposition& dec);

/// Symmetric 3x3 coefficient matrices of the Hessian, one per monomial, in
/// graded-lex order of the monomial.
std::vector<Matrix> hessian_coefficient_matrices(const Polynomial& phi);

/// Lowest power of x1 dividing a univariate polynomial (nullopt for zero).
Multiplicity root_multiplicity_at_zero(const Polynomial& q);

}  // namespace zerocurv
