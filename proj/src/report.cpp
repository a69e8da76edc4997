#include "zerocurv/report.hpp"

#include <chrono>
#include <regex>
#include <stdexcept>

#include "zerocurv/parse.hpp"

namespace zerocurv {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string var_name(int v) { return "x" + std::to_string(v + 1); }

int var_index(const json& j) {
  std::string s = j.get<std::string>();
  if (s.size() != 2 || s[0] != 'x' || s[1] < '1' || s[1] > '3') throw std::invalid_argument("bad variable " + s);
  return s[1] - '1';
}

template <typename E, std::size_t N>
E enum_from(const std::string& s, const std::array<E, N>& all) {
  for (E e : all) {
    if (s == to_string(e)) return e;
  }
  throw std::invalid_argument("unknown tag " + s);
}

const std::array<DecompositionCase, 3> kCases{DecompositionCase::OneVar, DecompositionCase::TwoVar,
                                              DecompositionCase::Form};
const std::array<HeightCase, 4> kHeightCases{HeightCase::OneVar, HeightCase::TwoVar, HeightCase::FormCase1,
                                             HeightCase::FormCase2};
const std::array<PsStatus, 3> kStatus{PsStatus::Exact, PsStatus::LowerBoundOnly, PsStatus::CurvatureCase};

json multiplicity_to_json(const Multiplicity& m) { return m ? json(*m) : json(nullptr); }
Multiplicity multiplicity_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<int>();
}

}  // namespace

AnalysisReport analyze(const Polynomial& phi_in, const std::optional<LinearMap>& assume) {
  AnalysisReport r;
  Polynomial phi = phi_in.with_nvars(3);
  r.input = phi;

  auto t0 = Clock::now();
  r.hessian = hessian_vanishes(phi);
  r.timings["hessian"] = ms_since(t0);
  if (!r.hessian.vanishes && !assume) {
    throw StructureError(StructureError::Kind::NotDegenerate, "Hessian determinant is not identically zero");
  }

  t0 = Clock::now();
  r.decomposition = assume ? decompose_with_matrix(phi, *assume) : decompose(phi);
  r.timings["decompose"] = ms_since(t0);

  t0 = Clock::now();
  Adapted3D a = adapt_3d(phi, r.decomposition);
  r.chart = std::move(a.chart);
  r.height = std::move(a.height);
  r.timings["adapt"] = ms_since(t0);

  t0 = Clock::now();
  r.exponents = exponent_report(r.height.h, r.height.nu, hessian_rank_at_origin(phi));
  r.timings["exponents"] = ms_since(t0);
  return r;
}

json rational_to_json(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return to_string(c);
}

Rational rational_from_json(const json& j) { return parse_rational(j.get<std::string>()); }

json scalar_to_json(const Scalar& s) {
  if (s.is_rational()) return rational_to_json(s.rational_part());
  return json{{"a", rational_to_json(s.rational_part())},
              {"b", rational_to_json(s.radical_part())},
              {"D", s.radicand()}};
}

Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return Scalar(rational_from_json(j));
  return Scalar(rational_from_json(j.at("a")), rational_from_json(j.at("b")), j.at("D").get<std::int64_t>());
}

json polynomial_to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back(json::array({m.e[0], m.e[1], m.e[2], scalar_to_json(c)}));
  return json{{"text", p.str()}, {"nvars", p.nvars()}, {"terms", terms}};
}

Polynomial polynomial_from_json(const json& j) {
  Polynomial p(j.at("nvars").get<int>());
  for (const auto& t : j.at("terms")) {
    Monomial m{{t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()}};
    p.add_term(m, scalar_from_json(t.at(3)));
  }
  return p;
}

json matrix_to_json(const LinearMap& a) {
  json rows = json::array();
  for (const auto& row : a.entries()) {
    json r = json::array();
    for (const auto& e : row) r.push_back(scalar_to_json(e));
    rows.push_back(r);
  }
  return rows;
}

LinearMap matrix_from_json(const json& j) {
  Matrix m;
  for (const auto& row : j) {
    Vector r;
    for (const auto& e : row) r.push_back(scalar_from_json(e));
    m.push_back(std::move(r));
  }
  return LinearMap(std::move(m));
}

json chart_to_json(const AdaptedChart& c) {
  json steps = json::array();
  for (const auto& s : c.steps) {
    if (const auto* l = std::get_if<LinearStep>(&s)) {
      steps.push_back({{"type", "linear"}, {"matrix", matrix_to_json(l->map)}});
    } else {
      const auto& t = std::get<TriangularStep>(s);
      steps.push_back({{"type", "triangular"},
                       {"target", var_name(t.target)},
                       {"source", var_name(t.source)},
                       {"c", scalar_to_json(t.c)},
                       {"m", t.m}});
    }
  }
  json smooth = nullptr;
  if (c.smooth) {
    smooth = {{"factor", polynomial_to_json(c.smooth->factor)}, {"multiplicity", c.smooth->multiplicity}};
  }
  return json{{"nvars", c.nvars},
              {"steps", steps},
              {"final", polynomial_to_json(c.final_poly)},
              {"smooth_factor", smooth}};
}

AdaptedChart chart_from_json(const json& j) {
  AdaptedChart c;
  c.nvars = j.at("nvars").get<int>();
  for (const auto& s : j.at("steps")) {
    std::string type = s.at("type").get<std::string>();
    if (type == "linear") {
      c.steps.push_back(LinearStep{matrix_from_json(s.at("matrix"))});
    } else if (type == "triangular") {
      TriangularStep t;
      t.target = var_index(s.at("target"));
      t.source = var_index(s.at("source"));
      t.c = scalar_from_json(s.at("c"));
      t.m = s.at("m").get<int>();
      c.steps.push_back(t);
    } else {
      throw std::invalid_argument("unknown chart step " + type);
    }
  }
  c.final_poly = polynomial_from_json(j.at("final"));
  if (j.contains("smooth_factor") && !j.at("smooth_factor").is_null()) {
    const json& f = j.at("smooth_factor");
    c.smooth = SmoothFactor{polynomial_from_json(f.at("factor")), f.at("multiplicity").get<int>()};
  }
  return c;
}

json hessian_to_json(const HessianReport& h) {
  json j{{"vanishes", h.vanishes}, {"determinant", polynomial_to_json(h.determinant)}};
  if (h.witness) {
    json w = json::array();
    for (const auto& x : *h.witness) w.push_back(rational_to_json(x));
    j["witness"] = w;
    j["witness_value"] = rational_to_json(*h.witness_value);
  } else {
    j["witness"] = nullptr;
    j["witness_value"] = nullptr;
  }
  return j;
}

json decomposition_to_json(const Decomposition& d) {
  json j{{"case", to_string(d.kind)},
         {"matrix", matrix_to_json(d.a)},
         {"transformed", polynomial_to_json(d.transformed)}};
  switch (d.kind) {
    case DecompositionCase::OneVar:
      j["nu"] = d.nu;
      j["q"] = polynomial_to_json(d.q);
      break;
    case DecompositionCase::TwoVar:
      j["psi"] = polynomial_to_json(d.psi);
      break;
    case DecompositionCase::Form: {
      json f = json::array();
      json n = json::array();
      for (int i = 0; i < 3; ++i) {
        f.push_back(polynomial_to_json(d.forms[i]));
        n.push_back(multiplicity_to_json(d.nus[i]));
      }
      j["forms"] = f;
      j["nus"] = n;
      break;
    }
  }
  return j;
}

json height_to_json(const HeightReport& h) {
  json j{{"h", rational_to_json(h.h)},
         {"d_adapted", rational_to_json(h.d_adapted)},
         {"nu", h.nu},
         {"face_dim", h.face_dim},
         {"case", to_string(h.kind)},
         {"linearly_adapted", h.linearly_adapted},
         {"remarks", h.remarks}};
  if (h.form2) {
    j["form2"] = {{"c1", scalar_to_json(h.form2->c1)},
                  {"c2", scalar_to_json(h.form2->c2)},
                  {"c3", scalar_to_json(h.form2->c3)},
                  {"b", matrix_to_json(h.form2->b)}};
  } else {
    j["form2"] = nullptr;
  }
  return j;
}

json exponents_to_json(const ExponentReport& e) {
  return json{{"beta", rational_to_json(e.beta)},
              {"log_flag", e.log_flag},
              {"p_s", rational_to_json(e.p_s)},
              {"p_s_status", to_string(e.p_s_status)},
              {"p_s_upper", e.p_s_upper ? rational_to_json(*e.p_s_upper) : json(nullptr)},
              {"beta_u", rational_to_json(e.beta_u)},
              {"beta_index", rational_to_json(e.beta_index)},
              {"gamma_u", rational_to_json(e.gamma_u)},
              {"gamma_index", rational_to_json(e.gamma_index)},
              {"hessian_rank_at_0", e.hessian_rank_at_0}};
}

json report_to_json(const AnalysisReport& r) {
  return json{{"schema_version", kSchemaVersion},
              {"input", polynomial_to_json(r.input)},
              {"hessian", hessian_to_json(r.hessian)},
              {"decomposition", decomposition_to_json(r.decomposition)},
              {"chart", chart_to_json(r.chart)},
              {"height", height_to_json(r.height)},
              {"exponents", exponents_to_json(r.exponents)},
              {"timings_ms", r.timings}};
}

AnalysisReport report_from_json(const json& j) {
  if (j.at("schema_version").get<std::string>() != kSchemaVersion) {
    throw std::invalid_argument("unsupported schema version " + j.at("schema_version").get<std::string>());
  }
  AnalysisReport r;
  r.input = polynomial_from_json(j.at("input"));

  const json& h = j.at("hessian");
  r.hessian.vanishes = h.at("vanishes").get<bool>();
  r.hessian.determinant = polynomial_from_json(h.at("determinant"));
  if (!h.at("witness").is_null()) {
    std::array<Rational, 3> w;
    for (int i = 0; i < 3; ++i) w[i] = rational_from_json(h.at("witness").at(i));
    r.hessian.witness = w;
    r.hessian.witness_value = rational_from_json(h.at("witness_value"));
  }

  const json& d = j.at("decomposition");
  r.decomposition.kind = enum_from(d.at("case").get<std::string>(), kCases);
  r.decomposition.a = matrix_from_json(d.at("matrix"));
  r.decomposition.transformed = polynomial_from_json(d.at("transformed"));
  if (d.contains("nu")) r.decomposition.nu = d.at("nu").get<int>();
  if (d.contains("q")) r.decomposition.q = polynomial_from_json(d.at("q"));
  if (d.contains("psi")) r.decomposition.psi = polynomial_from_json(d.at("psi"));
  if (d.contains("forms")) {
    for (int i = 0; i < 3; ++i) {
      r.decomposition.forms[i] = polynomial_from_json(d.at("forms").at(i));
      r.decomposition.nus[i] = multiplicity_from_json(d.at("nus").at(i));
    }
  }

  r.chart = chart_from_json(j.at("chart"));

  const json& ht = j.at("height");
  r.height.h = rational_from_json(ht.at("h"));
  r.height.d_adapted = rational_from_json(ht.at("d_adapted"));
  r.height.nu = ht.at("nu").get<int>();
  r.height.face_dim = ht.at("face_dim").get<int>();
  r.height.kind = enum_from(ht.at("case").get<std::string>(), kHeightCases);
  r.height.linearly_adapted = ht.at("linearly_adapted").get<bool>();
  r.height.remarks = ht.at("remarks").get<std::vector<std::string>>();
  if (!ht.at("form2").is_null()) {
    const json& f = ht.at("form2");
    r.height.form2 = FormCase2Data{scalar_from_json(f.at("c1")), scalar_from_json(f.at("c2")),
                                   scalar_from_json(f.at("c3")), matrix_from_json(f.at("b"))};
  }

  const json& e = j.at("exponents");
  r.exponents.beta = rational_from_json(e.at("beta"));
  r.exponents.log_flag = e.at("log_flag").get<int>();
  r.exponents.p_s = rational_from_json(e.at("p_s"));
  r.exponents.p_s_status = enum_from(e.at("p_s_status").get<std::string>(), kStatus);
  if (!e.at("p_s_upper").is_null()) r.exponents.p_s_upper = rational_from_json(e.at("p_s_upper"));
  r.exponents.beta_u = rational_from_json(e.at("beta_u"));
  r.exponents.beta_index = rational_from_json(e.at("beta_index"));
  r.exponents.gamma_u = rational_from_json(e.at("gamma_u"));
  r.exponents.gamma_index = rational_from_json(e.at("gamma_index"));
  r.exponents.hessian_rank_at_0 = e.at("hessian_rank_at_0").get<int>();

  if (j.contains("timings_ms")) r.timings = j.at("timings_ms").get<std::map<std::string, double>>();
  return r;
}

Scalar parse_scalar(const std::string& text_in) {
  std::string text;
  for (char c : text_in) {
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  }
  // optional rational part, then optional [+-][b*]sqrt(D)
  static const std::regex re(R"(^([+-]?\d+(?:/\d+)?)?(?:([+-])?(?:(\d+(?:/\d+)?)\*)?sqrt\((\d+)\))?$)");
  std::smatch m;
  if (text.empty() || !std::regex_match(text, m, re)) throw std::invalid_argument("bad scalar '" + text_in + "'");
  Scalar out = m[1].matched ? Scalar(parse_rational(m[1].str())) : Scalar(0);
  if (m[4].matched) {
    if (m[1].matched && !m[2].matched) throw std::invalid_argument("bad scalar '" + text_in + "'");
    Rational b = m[3].matched ? parse_rational(m[3].str()) : Rational(1);
    if (m[2].matched && m[2].str() == "-") b = -b;
    out += Scalar(b) * Scalar::sqrt_of(std::stoll(m[4].str()));
  }
  return out;
}

LinearMap parse_matrix(const std::string& text) {
  std::vector<std::string> entries;
  std::string t = text;
  auto first = t.find_first_not_of(" \t\n");
  if (first != std::string::npos && t[first] == '[') {
    json j = json::parse(t);
    for (const auto& row : j) {
      if (row.is_array()) {
        for (const auto& e : row) entries.push_back(e.is_string() ? e.get<std::string>() : e.dump());
      } else {
        entries.push_back(row.is_string() ? row.get<std::string>() : row.dump());
      }
    }
  } else {
    std::string cur;
    for (char c : t) {
      if (c == ',' || c == ';') {
        entries.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    entries.push_back(cur);
  }
  if (entries.size() != 9) throw std::invalid_argument("matrix needs 9 entries, got " + std::to_string(entries.size()));
  Matrix m(3, Vector(3));
  for (int i = 0; i < 9; ++i) m[i / 3][i % 3] = parse_scalar(entries[i]);
  return LinearMap(std::move(m));
}

}  // namespace zerocurv
