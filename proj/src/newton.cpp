#include "zerocurv/newton.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace zerocurv {

namespace {

long dot(const LatticePoint& a, const LatticePoint& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

LatticePoint sub(const LatticePoint& a, const LatticePoint& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

LatticePoint cross(const LatticePoint& a, const LatticePoint& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

LatticePoint unit(int k) {
  LatticePoint e{0, 0, 0};
  e[k] = 1;
  return e;
}

// Sign-normalized primitive normal, or nullopt for mixed-sign / zero vectors.
std::optional<LatticePoint> normalize_normal(LatticePoint n) {
  bool pos = false;
  bool neg = false;
  for (long v : n) {
    pos |= v > 0;
    neg |= v < 0;
  }
  if (pos == neg) return std::nullopt;  // zero or mixed
  if (neg) {
    for (long& v : n) v = -v;
  }
  long g = std::gcd(std::gcd(n[0], n[1]), n[2]);
  for (long& v : n) v /= g;
  return n;
}

// Rank of integer vectors (exact elimination over Q).
int vector_rank(std::vector<LatticePoint> rows, int dim) {
  int r = 0;
  std::vector<std::array<Rational, 3>> m;
  for (const auto& v : rows) m.push_back({Rational(v[0]), Rational(v[1]), Rational(v[2])});
  for (int c = 0; c < dim && r < static_cast<int>(m.size()); ++c) {
    int p = -1;
    for (int i = r; i < static_cast<int>(m.size()); ++i) {
      if (sgn(m[i][c]) != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    for (int i = r + 1; i < static_cast<int>(m.size()); ++i) {
      if (sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (int j = c; j < dim; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

// Dimension of conv(points) + cone(rays).
int face_dimension(const std::vector<LatticePoint>& points, const std::vector<int>& rays, int dim) {
  std::vector<LatticePoint> vecs;
  for (std::size_t i = 1; i < points.size(); ++i) vecs.push_back(sub(points[i], points[0]));
  for (int k : rays) vecs.push_back(unit(k));
  return vector_rank(vecs, dim);
}

std::vector<Facet> facets_3d(const std::vector<LatticePoint>& pts) {
  std::set<LatticePoint> normals;
  for (int k = 0; k < 3; ++k) normals.insert(unit(k));
  std::size_t n = pts.size();
  auto consider = [&](const LatticePoint& raw) {
    if (auto nn = normalize_normal(raw)) normals.insert(*nn);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      LatticePoint d = sub(pts[j], pts[i]);
      for (int k = 0; k < 3; ++k) consider(cross(d, unit(k)));
      for (std::size_t l = j + 1; l < n; ++l) consider(cross(d, sub(pts[l], pts[i])));
    }
  }
  std::vector<Facet> out;
  for (const auto& nrm : normals) {
    long c = dot(nrm, pts[0]);
    for (const auto& p : pts) c = std::min(c, dot(nrm, p));
    std::vector<LatticePoint> tight;
    for (const auto& p : pts) {
      if (dot(nrm, p) == c) tight.push_back(p);
    }
    std::vector<int> rays;
    for (int k = 0; k < 3; ++k) {
      if (nrm[k] == 0) rays.push_back(k);
    }
    if (face_dimension(tight, rays, 3) == 2) out.push_back({nrm, c});
  }
  return out;
}

std::vector<Facet> facets_2d(const std::vector<LatticePoint>& pts) {
  // Pareto-minimal points, sorted by t1 ascending (so t2 strictly descending).
  std::vector<LatticePoint> sorted = pts;
  std::sort(sorted.begin(), sorted.end());
  std::vector<LatticePoint> stair;
  for (const auto& p : sorted) {
    if (stair.empty() || p[1] < stair.back()[1]) stair.push_back(p);
  }
  // Lower convex chain through the staircase.
  std::vector<LatticePoint> hull;
  for (const auto& p : stair) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      long turn = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
      if (turn <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  std::vector<Facet> out;
  out.push_back({{1, 0, 0}, stair.front()[0]});
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const auto& p = hull[i];
    const auto& q = hull[i + 1];
    auto nn = normalize_normal({p[1] - q[1], q[0] - p[0], 0});
    out.push_back({*nn, dot(*nn, p)});
  }
  out.push_back({{0, 1, 0}, stair.back()[1]});
  return out;
}

}  // namespace

bool NewtonPolyhedron::contains(const std::array<Rational, 3>& t) const {
  for (const auto& f : facets) {
    Rational v(0);
    for (int k = 0; k < dim; ++k) v += Rational(f.normal[k]) * t[k];
    if (v < f.offset) return false;
  }
  return true;
}

SupportSet taylor_support(const Polynomial& phi) {
  if (phi.is_zero()) throw SupportError("zero polynomial has no Taylor support");
  if (!phi.constant_term().is_zero()) throw SupportError("polynomial does not vanish at the origin");
  if (phi.nvars() < 2) throw SupportError("Newton polyhedra need 2 or 3 variables");
  SupportSet s;
  s.dim = phi.nvars();
  for (const auto& [m, c] : phi.terms()) s.points.push_back({m.e[0], m.e[1], m.e[2]});
  std::sort(s.points.begin(), s.points.end());
  return s;
}

NewtonPolyhedron build_polyhedron(const SupportSet& s) {
  if (s.points.empty()) throw SupportError("empty support");
  NewtonPolyhedron n;
  n.dim = s.dim;
  n.generators = s;
  std::sort(n.generators.points.begin(), n.generators.points.end());
  n.generators.points.erase(std::unique(n.generators.points.begin(), n.generators.points.end()),
                            n.generators.points.end());
  const auto& pts = n.generators.points;
  n.facets = s.dim == 2 ? facets_2d(pts) : facets_3d(pts);
  for (const auto& p : pts) {
    std::vector<LatticePoint> normals;
    for (const auto& f : n.facets) {
      if (dot(f.normal, p) == f.offset) normals.push_back(f.normal);
    }
    if (vector_rank(normals, s.dim) == s.dim) n.vertices.push_back(p);
  }
  return n;
}

Rational newton_distance(const NewtonPolyhedron& n) {
  Rational d(0);
  for (const auto& f : n.facets) {
    long sum = f.normal[0] + f.normal[1] + f.normal[2];
    Rational t(f.offset, sum);
    t.canonicalize();
    if (t > d) d = t;
  }
  return d;
}

PrincipalData principal_face(const NewtonPolyhedron& n, const Rational& d) {
  PrincipalData out;
  out.d = d;
  LatticePoint combined{0, 0, 0};
  long combined_offset = 0;
  for (std::size_t i = 0; i < n.facets.size(); ++i) {
    const auto& f = n.facets[i];
    long sum = f.normal[0] + f.normal[1] + f.normal[2];
    if (d * sum == f.offset) {
      out.tight_facets.push_back(static_cast<int>(i));
      for (int k = 0; k < 3; ++k) combined[k] += f.normal[k];
      combined_offset += f.offset;
    }
  }
  if (out.tight_facets.empty()) throw std::logic_error("(d,...,d) is not on the boundary");
  for (const auto& p : n.generators.points) {
    if (dot(combined, p) == combined_offset) out.face_points.push_back(p);
  }
  for (int k = 0; k < n.dim; ++k) {
    if (combined[k] == 0) out.rays.push_back(k);
  }
  out.face_dim = face_dimension(out.face_points, out.rays, n.dim);
  out.compact = out.rays.empty();
  if (n.dim == 2 && out.face_dim == 1 && out.compact) {
    const auto& f = n.facets[out.tight_facets.front()];
    std::array<Rational, 2> kappa{Rational(f.normal[0], f.offset), Rational(f.normal[1], f.offset)};
    for (auto& k : kappa) k.canonicalize();
    out.kappa = kappa;
    out.homogeneous_distance = 1 / (kappa[0] + kappa[1]);
  }
  return out;
}

Polynomial principal_part(const Polynomial& phi, const PrincipalData& p) {
  Polynomial out(phi.nvars());
  for (const auto& [m, c] : phi.terms()) {
    LatticePoint a{m.e[0], m.e[1], m.e[2]};
    if (std::find(p.face_points.begin(), p.face_points.end(), a) != p.face_points.end()) {
      out.add_term(m, c);
    }
  }
  return out;
}

NewtonData newton_data(const Polynomial& phi) {
  NewtonData nd;
  nd.polyhedron = build_polyhedron(taylor_support(phi));
  nd.principal = principal_face(nd.polyhedron, newton_distance(nd.polyhedron));
  return nd;
}

}  // namespace zerocurv
