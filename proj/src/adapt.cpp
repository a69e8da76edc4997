#include "zerocurv/adapt.hpp"

#include <algorithm>

#include "zerocurv/factor.hpp"

namespace zerocurv {

const char* to_string(AdaptError::Kind kind) {
  switch (kind) {
    case AdaptError::Kind::NonIntegerExponentRatio: return "NonIntegerExponentRatio";
    case AdaptError::Kind::IrrationalRoot: return "IrrationalRoot";
    case AdaptError::Kind::IterationCapExceeded: return "IterationCapExceeded";
    case AdaptError::Kind::NonRationalInput: return "NonRationalInput";
    case AdaptError::Kind::InternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

const char* to_string(FaceKind f) {
  switch (f) {
    case FaceKind::Vertex: return "vertex";
    case FaceKind::UnboundedEdge: return "unbounded-edge";
    case FaceKind::CompactEdge: return "compact-edge";
  }
  return "unknown";
}

const char* to_string(HeightCase c) {
  switch (c) {
    case HeightCase::OneVar: return "OneVar";
    case HeightCase::TwoVar: return "TwoVar";
    case HeightCase::FormCase1: return "FormCase1";
    case HeightCase::FormCase2: return "FormCase2";
  }
  return "Unknown";
}

const char* to_string(PsStatus s) {
  switch (s) {
    case PsStatus::Exact: return "exact";
    case PsStatus::LowerBoundOnly: return "lower-bound-only";
    case PsStatus::CurvatureCase: return "curvature-case";
  }
  return "unknown";
}

bool AdaptedChart::linear_only() const {
  return !smooth && std::all_of(steps.begin(), steps.end(), [](const ChartStep& s) {
    const auto* t = std::get_if<TriangularStep>(&s);
    return t == nullptr || t->m == 1;
  });
}

Polynomial apply_chart(const Polynomial& phi, const std::vector<ChartStep>& steps) {
  Polynomial cur = phi;
  for (const auto& step : steps) {
    if (const auto* lin = std::get_if<LinearStep>(&step)) {
      cur = compose_linear(cur, lin->map);
    } else {
      const auto& t = std::get<TriangularStep>(step);
      int n = cur.nvars();
      Polynomial image = Polynomial::variable(n, t.target) +
                         Polynomial::variable(n, t.source).pow(t.m) * t.c;
      cur = substitute(cur, t.target, image);
    }
  }
  return cur;
}

std::vector<ChartStep> lift_steps(const std::vector<ChartStep>& steps, int nvars) {
  std::vector<ChartStep> out;
  for (const auto& step : steps) {
    if (const auto* lin = std::get_if<LinearStep>(&step)) {
      int k = lin->map.dim();
      Matrix m(nvars, Vector(nvars, Scalar(0)));
      for (int i = 0; i < nvars; ++i) m[i][i] = Scalar(1);
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) m[i][j] = lin->map(i, j);
      }
      out.push_back(LinearStep{LinearMap(m)});
    } else {
      out.push_back(step);
    }
  }
  return out;
}

namespace {

// phi_pr restricted to one affine chart of the circle, as a polynomial in t.
Polynomial chart_restriction(const Polynomial& p, int chart) {
  Polynomial fixed = Polynomial::constant(1, Scalar(chart % 2 == 0 ? 1 : -1));
  Polynomial t = Polynomial::variable(1, 0);
  std::vector<Polynomial> images = chart < 2 ? std::vector<Polynomial>{fixed, t}
                                             : std::vector<Polynomial>{t, fixed};
  return compose(p, images);
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

enum class Match { Excess, Exact };

// Off-axis root with multiplicity > d (Excess) or == d (Exact) on the chart
// pair allowed by the edge weights, turned into a substitution.
std::optional<TriangularStep> step_for(const Adaptedness2D& a, Match match, AdaptedChart partial = {}) {
  if (a.face != FaceKind::CompactEdge || !a.principal.kappa) return std::nullopt;
  auto wanted = [&](const ChartRoot& r) {
    if (r.root.exact && sgn(*r.root.exact) == 0) return false;
    Rational k(r.root.multiplicity);
    return match == Match::Excess ? k > a.d : k == a.d;
  };
  const auto& kappa = *a.principal.kappa;
  Rational r21 = kappa[1] / kappa[0];
  Rational r12 = kappa[0] / kappa[1];
  int first_chart = -1;
  Rational ratio;
  if (is_integer(r21)) {
    first_chart = 0;
    ratio = r21;
  } else if (is_integer(r12)) {
    first_chart = 2;
    ratio = r12;
  }
  if (first_chart < 0) {
    bool any = std::any_of(a.roots.begin(), a.roots.end(), wanted);
    if (any && match == Match::Excess) {
      throw AdaptError(AdaptError::Kind::NonIntegerExponentRatio,
                       "root of multiplicity > d but kappa ratio " + to_string(r21) + " is not integral",
                       std::move(partial));
    }
    return std::nullopt;
  }
  int m = static_cast<int>(ratio.get_num().get_si());
  for (int chart : {first_chart, first_chart + 1}) {
    for (const auto& r : a.roots) {
      if (r.chart != chart || !wanted(r)) continue;
      if (!r.root.exact) {
        if (match == Match::Exact) return std::nullopt;
        AdaptError err(AdaptError::Kind::IrrationalRoot,
                       "excess-multiplicity root is irrational, isolated in [" + to_string(r.root.lo) + ", " +
                           to_string(r.root.hi) + "]",
                       std::move(partial));
        err.interval = std::make_pair(r.root.lo, r.root.hi);
        throw err;
      }
      Rational c = *r.root.exact;
      // the -1 chart sees the curve x_t = c (-x_s)^m
      if (chart % 2 == 1 && m % 2 == 1) c = -c;
      TriangularStep step;
      step.target = first_chart == 0 ? 1 : 0;
      step.source = first_chart == 0 ? 0 : 1;
      step.c = Scalar(c);
      step.m = m;
      return step;
    }
  }
  return std::nullopt;
}

}  // namespace

Adaptedness2D adaptedness_2d(const Polynomial& phi2) {
  if (phi2.nvars() != 2) throw std::invalid_argument("adaptedness_2d needs a bivariate polynomial");
  auto nd = newton_data(phi2);
  Adaptedness2D a;
  a.d = nd.principal.d;
  a.principal = nd.principal;
  a.principal_part = principal_part(phi2, nd.principal);
  if (nd.principal.is_vertex()) {
    a.face = FaceKind::Vertex;
    a.adapted = true;
    return a;
  }
  if (!nd.principal.compact) {
    a.face = FaceKind::UnboundedEdge;
    a.adapted = true;
    return a;
  }
  a.face = FaceKind::CompactEdge;
  if (!a.principal_part.is_rational()) {
    throw AdaptError(AdaptError::Kind::NonRationalInput,
                     "root multiplicities need rational coefficients in the principal part");
  }
  for (int chart = 0; chart < 4; ++chart) {
    for (auto& r : real_root_multiplicities(chart_restriction(a.principal_part, chart))) {
      a.m = std::max(a.m, r.multiplicity);
      a.roots.push_back({chart, std::move(r)});
    }
  }
  a.adapted = Rational(a.m) <= a.d;
  return a;
}

TriangularStep varchenko_step_2d(const Polynomial& phi2) {
  auto a = adaptedness_2d(phi2);
  if (a.adapted) {
    throw AdaptError(AdaptError::Kind::InternalConsistency, "polynomial is already adapted");
  }
  auto step = step_for(a, Match::Excess);
  if (!step) {
    throw AdaptError(AdaptError::Kind::InternalConsistency, "no excess-multiplicity root found");
  }
  return *step;
}

Adapt2DResult adapt_2d(const Polynomial& phi2) {
  Adapt2DResult res;
  res.chart.nvars = 2;
  res.chart.final_poly = phi2;
  int cap = 4 * std::max(phi2.degree(), 1);
  Adaptedness2D a = adaptedness_2d(phi2);
  int iter = 0;
  while (!a.adapted) {
    if (iter++ >= cap) {
      if (auto sp = smooth_power_at_origin(phi2)) {
        res.chart.steps.clear();
        res.chart.final_poly = phi2;
        res.chart.smooth = SmoothFactor{sp->factor, sp->multiplicity};
        res.h = sp->multiplicity;
        res.nu = 0;
        res.final_state = adaptedness_2d(Polynomial::monomial(2, Monomial{{0, sp->multiplicity, 0}}));
        return res;
      }
      throw AdaptError(AdaptError::Kind::IterationCapExceeded,
                       "2D adaptation did not terminate within " + std::to_string(cap) + " steps", res.chart);
    }
    auto step = step_for(a, Match::Excess, res.chart);
    if (!step) {
      throw AdaptError(AdaptError::Kind::InternalConsistency, "no excess-multiplicity root found", res.chart);
    }
    res.chart.steps.push_back(*step);
    res.chart.final_poly = apply_chart(res.chart.final_poly, {*step});
    a = adaptedness_2d(res.chart.final_poly);
  }
  res.h = a.d;
  if (a.face == FaceKind::CompactEdge && a.principal.homogeneous_distance &&
      *a.principal.homogeneous_distance != a.d) {
    throw AdaptError(AdaptError::Kind::InternalConsistency, "edge homogeneous distance differs from d", res.chart);
  }
  if (res.h >= 2) {
    if (a.face == FaceKind::Vertex) {
      res.nu = 1;
    } else if (a.face == FaceKind::CompactEdge) {
      // A root of multiplicity exactly d can be moved onto the axis, after
      // which (d,d) is a vertex. The exponent does not depend on the chart.
      bool eligible = false;
      for (const auto& r : a.roots) {
        bool off_axis = !(r.root.exact && sgn(*r.root.exact) == 0);
        if (off_axis && Rational(r.root.multiplicity) == a.d) eligible = true;
      }
      if (eligible) {
        res.nu = 1;
        if (auto step = step_for(a, Match::Exact)) {
          Polynomial moved = apply_chart(res.chart.final_poly, {*step});
          Adaptedness2D b = adaptedness_2d(moved);
          if (b.adapted && b.d == a.d && b.face == FaceKind::Vertex) {
            res.chart.steps.push_back(*step);
            res.chart.final_poly = moved;
            res.vertex_normalized = true;
            a = b;
          }
        }
      }
    }
  }
  res.final_state = a;
  return res;
}

namespace {

Scalar coefficient_at(const Polynomial& q, int k) { return q.coefficient(Monomial{{k, 0, 0}}); }

void check_smooth_factor(const AdaptedChart& chart) {
  const auto& f = chart.smooth->factor;
  bool smooth = f.constant_term().is_zero() && f.order() == 1;
  auto r = exact_divide(chart.final_poly, f.pow(chart.smooth->multiplicity));
  if (!smooth || !r || r->constant_term().is_zero()) {
    throw AdaptError(AdaptError::Kind::InternalConsistency, "smooth factor certificate failed", chart);
  }
}

}  // namespace

Adapted3D adapt_3d(const Polynomial& phi, const Decomposition& dec) {
  Adapted3D out;
  auto& chart = out.chart;
  auto& rep = out.height;
  chart.nvars = 3;
  chart.steps.push_back(LinearStep{dec.a});
  switch (dec.kind) {
    case DecompositionCase::OneVar: {
      rep.kind = HeightCase::OneVar;
      rep.h = dec.nu;
      rep.nu = 0;
      chart.final_poly = dec.transformed;
      break;
    }
    case DecompositionCase::TwoVar: {
      rep.kind = HeightCase::TwoVar;
      Adapt2DResult r;
      try {
        r = adapt_2d(dec.psi);
      } catch (AdaptError& e) {
        AdaptedChart partial = chart;
        auto lifted = lift_steps(e.partial_chart().steps, 3);
        partial.steps.insert(partial.steps.end(), lifted.begin(), lifted.end());
        partial.final_poly = apply_chart(phi, partial.steps);
        AdaptError wrapped(e.kind(), e.what(), partial);
        wrapped.interval = e.interval;
        throw wrapped;
      }
      auto lifted = lift_steps(r.chart.steps, 3);
      chart.steps.insert(chart.steps.end(), lifted.begin(), lifted.end());
      chart.final_poly = apply_chart(dec.transformed, lifted);
      if (r.chart.smooth) {
        chart.smooth = SmoothFactor{r.chart.smooth->factor.with_nvars(3), r.chart.smooth->multiplicity};
        rep.remarks.push_back("no polynomial chart is adapted; x2 is replaced by the smooth factor " +
                              chart.smooth->factor.str() + " of multiplicity " +
                              std::to_string(chart.smooth->multiplicity));
      }
      rep.h = r.h;
      rep.nu = r.nu;
      if (r.nu == 1 && !r.vertex_normalized && r.final_state.face == FaceKind::CompactEdge) {
        rep.remarks.push_back("principal face is an edge whose root of multiplicity d is irrational; "
                              "nu = 1 from the vertex reached over the extension field");
      }
      break;
    }
    case DecompositionCase::Form: {
      const auto& nus = dec.nus;
      if (!nus[1] || !nus[2]) {
        throw AdaptError(AdaptError::Kind::InternalConsistency, "form case needs Q2 and Q3 nonzero");
      }
      int nu2 = *nus[1];
      if (nus[0] && *nus[0] <= nu2) {
        rep.kind = HeightCase::FormCase1;
        rep.h = *nus[0];
        chart.final_poly = dec.transformed;
      } else {
        rep.kind = HeightCase::FormCase2;
        rep.h = nu2;
        FormCase2Data f;
        f.c1 = (nus[0] && *nus[0] == nu2 + 1) ? coefficient_at(dec.forms[0], nu2 + 1) : Scalar(0);
        f.c2 = coefficient_at(dec.forms[1], nu2);
        f.c3 = (*nus[2] == nu2) ? coefficient_at(dec.forms[2], nu2) : Scalar(0);
        Scalar inv = f.c2.inverse();
        LinearMap m(Matrix{{Scalar(1), Scalar(0), Scalar(0)},
                           {-f.c1 * inv, inv, -f.c3 * inv},
                           {Scalar(0), Scalar(0), Scalar(1)}});
        f.b = dec.a * m;
        chart.steps.push_back(LinearStep{m});
        chart.final_poly = compose_linear(dec.transformed, m);
        // z1^nu2 z2 with unit coefficient; all other monomials not of the
        // form z1^k z2 have degree >= nu2 + 2
        if (!chart.final_poly.coefficient(Monomial{{nu2, 1, 0}}).is_one()) {
          throw AdaptError(AdaptError::Kind::InternalConsistency, "missing z1^nu2 z2 term", chart);
        }
        for (const auto& [mono, c] : chart.final_poly.terms()) {
          bool z2_line = mono.e[1] == 1 && mono.e[2] == 0;
          if (!z2_line && mono.total() < nu2 + 2) {
            throw AdaptError(AdaptError::Kind::InternalConsistency, "low-degree remainder in case 2", chart);
          }
        }
        if (nu2 == 1) {
          rep.remarks.push_back("rank of D^2 phi is two near the origin; maximal operator bounded for p > 3/2");
        }
        rep.form2 = f;
      }
      rep.nu = 0;
      break;
    }
  }
  if (apply_chart(phi, chart.steps) != chart.final_poly) {
    throw AdaptError(AdaptError::Kind::InternalConsistency, "chart does not reproduce the final polynomial", chart);
  }
  if (chart.smooth) check_smooth_factor(chart);
  auto nd = newton_data(chart.smooth ? Polynomial::monomial(3, Monomial{{0, chart.smooth->multiplicity, 0}})
                                     : chart.final_poly);
  rep.d_adapted = nd.principal.d;
  rep.face_dim = nd.principal.face_dim;
  rep.linearly_adapted = chart.linear_only();
  if (rep.d_adapted != rep.h) {
    throw AdaptError(AdaptError::Kind::InternalConsistency,
                     "distance in adapted coordinates " + to_string(rep.d_adapted) + " differs from h " +
                         to_string(rep.h),
                     chart);
  }
  return out;
}

int varchenko_exponent(const HeightReport& report) {
  return report.kind == HeightCase::TwoVar ? report.nu : 0;
}

int hessian_rank_at_origin(const Polynomial& phi) {
  Polynomial q = homogeneous_part(phi, 2);
  auto h = hessian_matrix(q);
  Matrix m;
  for (const auto& row : h) {
    Vector r;
    for (const auto& e : row) r.push_back(e.constant_term());
    m.push_back(std::move(r));
  }
  return rank(m);
}

ExponentReport exponent_report(const Rational& h, int nu, int hessian_rank_at_0) {
  ExponentReport r;
  r.beta = 1 / h;
  r.log_flag = nu;
  r.hessian_rank_at_0 = hessian_rank_at_0;
  r.beta_u = r.beta_index = r.gamma_u = r.gamma_index = r.beta;
  if (h >= 2 || hessian_rank_at_0 == 0) {
    r.p_s = h;
    r.p_s_status = PsStatus::Exact;
  } else if (hessian_rank_at_0 >= 2) {
    r.p_s = Rational(3, 2);
    r.p_s_status = PsStatus::CurvatureCase;
  } else {
    r.p_s = h;
    r.p_s_status = PsStatus::LowerBoundOnly;
    r.p_s_upper = Rational(2);
  }
  return r;
}

}  // namespace zerocurv
