#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "zerocurv/linear_map.hpp"
#include "zerocurv/newton.hpp"
#include "zerocurv/polynomial.hpp"
#include "zerocurv/roots.hpp"
#include "zerocurv/structure.hpp"

namespace zerocurv {

/// x -> A x on all variables.
struct LinearStep {
  LinearMap map;
};

/// x_target <- x_target + c * x_source^m.
struct TriangularStep {
  int target = 1;
  int source = 0;
  Scalar c;
  int m = 1;
};

using ChartStep = std::variant<LinearStep, TriangularStep>;

/// Last coordinate change when no polynomial chart is adapted: x2 is
/// replaced by the analytic coordinate factor(x), and
/// final_poly = factor^multiplicity * (unit at 0).
struct SmoothFactor {
  Polynomial factor{3};
  int multiplicity = 0;
};

struct AdaptedChart {
  int nvars = 3;
  std::vector<ChartStep> steps;
  Polynomial final_poly{3};
  std::optional<SmoothFactor> smooth;

  bool linear_only() const;
};

/// Applies the steps in order (each step is a precomposition).
Polynomial apply_chart(const Polynomial& phi, const std::vector<ChartStep>& steps);

/// Triangular steps acting on variables 0 and 1 of a 2-variable chart, lifted
/// to `nvars` variables.
std::vector<ChartStep> lift_steps(const std::vector<ChartStep>& steps, int nvars);

class AdaptError : public std::runtime_error {
 public:
  enum class Kind {
    NonIntegerExponentRatio,
    IrrationalRoot,
    IterationCapExceeded,
    NonRationalInput,  // root analysis needs rational coefficients
    InternalConsistency,
  };

  AdaptError(Kind kind, const std::string& message, AdaptedChart partial = {})
      : std::runtime_error(message), kind_(kind), partial_(std::move(partial)) {}

  Kind kind() const { return kind_; }
  const AdaptedChart& partial_chart() const { return partial_; }
  /// Isolating interval of the offending root (IrrationalRoot only).
  std::optional<std::pair<Rational, Rational>> interval;

 private:
  Kind kind_;
  AdaptedChart partial_;
};

const char* to_string(AdaptError::Kind kind);

/// Real root of phi_pr on one of the four affine charts of the circle:
/// 0: (1,t), 1: (-1,t), 2: (t,1), 3: (t,-1).
struct ChartRoot {
  int chart = 0;
  RealRoot root;
};

enum class FaceKind { Vertex, UnboundedEdge, CompactEdge };
const char* to_string(FaceKind f);

struct Adaptedness2D {
  bool adapted = false;
  Rational d;
  FaceKind face = FaceKind::Vertex;
  PrincipalData principal;
  Polynomial principal_part{2};
  /// max root multiplicity over the charts (compact edge only)
  int m = 0;
  std::vector<ChartRoot> roots;
};

Adaptedness2D adaptedness_2d(const Polynomial& phi2);

/// One Varchenko substitution removing the root of multiplicity > d.
TriangularStep varchenko_step_2d(const Polynomial& phi2);

struct Adapt2DResult {
  AdaptedChart chart;  // nvars = 2
  Rational h;
  int nu = 0;
  Adaptedness2D final_state;
  /// Extra substitution turning a compact edge with a root of multiplicity
  /// exactly d into a vertex (appended to chart.steps).
  bool vertex_normalized = false;
};

/// Runs the polynomial Varchenko loop. When it cannot terminate because phi2
/// is a power of a smooth curve times a unit, the result carries
/// chart.smooth instead of triangular steps, with h = multiplicity.

Adapt2DResult adapt_2d(const Polynomial& phi2);

enum class HeightCase { OneVar, TwoVar, FormCase1, FormCase2 };
const char* to_string(HeightCase c);

struct FormCase2Data {
  Scalar c1, c2, c3;
  LinearMap b = LinearMap::identity(3);
};

struct HeightReport {
  Rational h;
  Rational d_adapted;
  int nu = 0;
  int face_dim = 0;
  HeightCase kind = HeightCase::OneVar;
  bool linearly_adapted = true;
  std::optional<FormCase2Data> form2;
  std::vector<std::string> remarks;
};

struct Adapted3D {
  AdaptedChart chart;
  HeightReport height;
};

Adapted3D adapt_3d(const Polynomial& phi, const Decomposition& dec);

/// 0 in every Form and OneVar case; the 2D rule otherwise.
int varchenko_exponent(const HeightReport& report);

enum class PsStatus { Exact, LowerBoundOnly, CurvatureCase };
const char* to_string(PsStatus s);

struct ExponentReport {
  Rational beta;
  int log_flag = 0;
  Rational p_s;
  PsStatus p_s_status = PsStatus::Exact;
  /// Known upper bound for p_S when only a lower bound is exact.
  std::optional<Rational> p_s_upper;
  Rational beta_u, beta_index, gamma_u, gamma_index;
  int hessian_rank_at_0 = 0;
};

ExponentReport exponent_report(const Rational& h, int nu, int hessian_rank_at_0);

/// rank of D^2 phi(0) from the quadratic Taylor part.
int hessian_rank_at_origin(const Polynomial& phi);

}  // namespace zerocurv
