// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "support/lp_oracle.hpp"
#include "support/random.hpp"
#include "zerocurv/catalog.hpp"
#include "zerocurv/parse.hpp"
#include "zerocurv/verify/decay.hpp"
#include "zerocurv/verify/sublevel.hpp"

using namespace zerocurv;
using namespace zerocurv::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

bool run(int number, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(dt < limit_s, "took " + std::to_string(dt) + " s");
  std::printf("%s %d %s (%.2f s / %.0f s) %s\n", o.pass ? "PASS" : "FAIL", number, title, dt, limit_s,
              o.detail.str().c_str());
  std::fflush(stdout);
  return o.pass;
}

struct DecayCase {
  const char* poly;
  double h;
  int nu;
};

const DecayCase kDecay[] = {
    {"x1^3", 3, 0}, {"x1^4", 4, 0}, {"x1^3 + x1^2*x2 + x1^4*x3", 2, 0}, {"x1^2*x2^2", 2, 1}};

void catalog_correct(Outcome& o) {
  for (const auto& e : catalog()) {
    auto c = check_entry(e);
    std::string why = e.name;
    for (const auto& m : c.mismatches) why += " / " + m;
    o.require(c.pass, why);
  }
  o.detail << catalog().size() << " entries";
}

void structure_round_trip(Outcome& o) {
  Rng rng(1001);
  const Shape shapes[] = {Shape::OneVar, Shape::TwoVar, Shape::Form};
  int ok = 0;
  for (int i = 0; i < 50; ++i) {
    Polynomial canon = random_canonical(rng, shapes[i % 3], 8);
    Polynomial phi = compose_linear(canon, random_invertible(rng));
    auto h = hessian_vanishes(phi);
    o.require(h.vanishes, "Hessian not vanishing for " + phi.str());
    Decomposition d = decompose(phi);
    bool v = verify_decomposition(phi, d);
    o.require(v, "shape identity failed for " + phi.str());
    ok += h.vanishes && v;
  }
  int witnesses = 0;
  for (int i = 0; i < 50; ++i) {
    Polynomial phi = random_generic(rng, 4);
    auto h = hessian_vanishes(phi);
    bool valid = false;
    if (!h.vanishes && h.witness) {
      std::array<Scalar, 3> pt{Scalar((*h.witness)[0]), Scalar((*h.witness)[1]), Scalar((*h.witness)[2])};
      Scalar val = hessian_det(phi).evaluate(pt);
      valid = !val.is_zero() && val == Scalar(*h.witness_value);
    }
    bool threw = false;
    try {
      decompose(phi);
    } catch (const StructureError& e) {
      threw = e.kind() == StructureError::Kind::NotDegenerate;
    }
    o.require(valid && threw, "generic polynomial without a valid witness: " + phi.str());
    witnesses += valid && threw;
  }
  o.detail << ok << "/50 shapes verified, " << witnesses << "/50 witnesses valid";
}

void newton_oracle(Outcome& o) {
  Rng rng(2002);
  int dist_ok = 0;
  long member_ok = 0;
  for (int i = 0; i < 100; ++i) {
    SupportSet s = random_support(rng, 3, 12, 12);
    NewtonPolyhedron n = build_polyhedron(s);
    bool d = newton_distance(n) == lp_distance(s);
    o.require(d, "distance mismatch on support #" + std::to_string(i));
    dist_ok += d;
    for (int k = 0; k < 1000; ++k) {
      auto t = random_point(rng, 3, 14);
      bool m = n.contains(t) == lp_contains(s, t);
      o.require(m, "membership mismatch on support #" + std::to_string(i));
      member_ok += m;
    }
  }
  o.detail << dist_ok << "/100 distances, " << member_ok << "/100000 memberships";
}

void decay_sharpness(Outcome& o) {
  for (const auto& c : kDecay) {
    verify::OscillatoryPlan plan(parse_polynomial(c.poly), verify::BumpSpec{});
    auto s = verify::decay_scan(plan, {0, 0, 0, 1});
    auto f = verify::fit_decay(s, c.nu);
    o.require(std::fabs(f.exponent + 1.0 / c.h) <= 0.07, std::string(c.poly) + " exponent " +
                                                              std::to_string(f.exponent));
    o.detail << c.poly << ": " << f.exponent << "; ";
    if (c.nu == 1) {
      auto g = verify::fit_decay(s, 0);
      o.require(g.exponent > -0.5 && g.exponent < -0.40, std::string(c.poly) + " no-log exponent " +
                                                              std::to_string(g.exponent));
      o.detail << "no-log " << g.exponent << "; ";
    }
  }
}

void uniformity_envelope(Outcome& o) {
  auto dirs = verify::cone_directions();
  for (const auto& c : kDecay) {
    verify::OscillatoryPlan plan(parse_polynomial(c.poly), verify::BumpSpec{});
    double worst = -INFINITY;
    for (const auto& d : dirs) {
      auto s = verify::decay_scan(plan, d);
      auto f = verify::envelope_fit(s);
      worst = std::max(worst, f.exponent);
      o.require(f.exponent <= -1.0 / c.h + 0.1, std::string(c.poly) + " envelope exponent " +
                                                    std::to_string(f.exponent));
    }
    verify::DecayScanOptions so;
    so.lambda_max = 4096;
    auto flat = verify::decay_scan(plan, {1, 0, 0, 0}, so);
    const auto& last = flat.samples.back();
    bool fast = std::abs(last.value) + last.error <= 1e-8 * std::abs(flat.samples.front().value);
    o.require(fast, std::string(c.poly) + " xi4=0 not below 1e-8 by 2^12");
    o.detail << c.poly << ": worst " << worst << "; ";
  }
}

void integrability(Outcome& o) {
  for (const auto& e : catalog()) {
    auto c = check_entry(e);
    double h = e.h.get_d();
    verify::ProbeOptions po;
    po.height = h;
    po.log_flag = c.report.height.nu;
    Polynomial phi = parse_polynomial(e.poly);
    auto hi = verify::integrability_probe(phi, 1.5 * h, po);
    auto lo = verify::integrability_probe(phi, 0.75 * h, po);
    o.require(std::fabs(hi.a - 1.0 / h) <= 0.1, e.name + " a=" + std::to_string(hi.a));
    o.require(hi.verdict == verify::Verdict::Converges, e.name + " at 1.5h: " + verify::to_string(hi.verdict));
    o.require(lo.verdict == verify::Verdict::Diverges, e.name + " at 0.75h: " + verify::to_string(lo.verdict));
  }
  o.detail << catalog().size() << " entries";
}

void invariance(Outcome& o) {
  Rng rng(3003);
  int runs = 0;
  for (const auto& e : catalog()) {
    Polynomial phi = parse_polynomial(e.poly);
    for (int k = 0; k < 20; ++k) {
      Polynomial moved = compose_linear(phi, random_invertible(rng));
      try {
        auto r = analyze(moved);
        o.require(r.height.h == e.h && r.height.nu == e.nu,
                  e.name + " moved to h=" + to_string(r.height.h) + " nu=" + std::to_string(r.height.nu));
        ++runs;
      } catch (const std::exception& ex) {
        o.require(false, e.name + " precomposed: " + ex.what());
      }
    }
  }
  int chain = 0;
  for (int i = 0; i < 50; ++i) {
    Polynomial phi = i % 2 ? random_generic(rng, 4) : random_canonical(rng, Shape::Form, 6);
    LinearMap a = random_invertible(rng);
    Polynomial lhs = hessian_det(compose_linear(phi, a));
    Scalar det = a.det();
    Polynomial rhs = compose_linear(hessian_det(phi), a) * (det * det);
    o.require(lhs == rhs, "chain rule failed for " + phi.str());
    chain += lhs == rhs;
  }
  o.detail << runs << " precompositions, " << chain << "/50 chain-rule identities";
}

}  // namespace

int main() {
  bool all = true;
  all &= run(1, "catalog correctness", 1.0, catalog_correct);
  all &= run(2, "structure round-trip", 30.0, structure_round_trip);
  all &= run(3, "Newton oracle equivalence", 60.0, newton_oracle);
  all &= run(4, "decay sharpness", 600.0, decay_sharpness);
  all &= run(5, "uniformity envelope", 600.0, uniformity_envelope);
  all &= run(6, "integrability dichotomy", 300.0, integrability);
  all &= run(7, "invariance suite", 60.0, invariance);
  return all ? 0 : 1;
}
