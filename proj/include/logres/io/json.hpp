#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "logres/divisor/catalog.hpp"
#include "logres/normalform.hpp"

namespace logres::io {

using json = nlohmann::ordered_json;
using divisor::FreeDivisor;
using exact::Monomial;
using exact::PolyMatrix;
using exact::Rational;
using exact::RationalMatrix;
using exact::Weights;
using exact::WeightedPoly;
using liealg::ResidueData;

// Semantic errors carry the JSON pointer of the offending value.
inline ParseError at(const std::string& path, const std::string& msg) {
  return ParseError((path.empty() ? "/" : path) + ": " + msg);
}

inline json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw at(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw at(path, "missing field '" + key + "'");
  return *it;
}

inline const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array()) throw at(path, "expected an array");
  return j;
}

inline long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw at(path, "expected an integer");
  return j.get<long>();
}

inline std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw at(path, "expected a string");
  return j.get<std::string>();
}

// ---------------------------------------------------------------------------
// Scalars, polynomials, matrices.

inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw at(path, "expected a rational as \"p/q\" or an integer");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    throw at(path, e.what());
  }
}

inline json to_json(const WeightedPoly& p) {
  json out = json::array();
  for (const auto& [m, c] : p.terms()) out.push_back({{"exponents", m}, {"coeff", c.str()}});
  return out;
}

// Accepts the term-list form or a polynomial written as text.
inline WeightedPoly poly_from(const json& j, const std::vector<std::string>& names, const Weights& w,
                              const std::string& path) {
  if (j.is_string()) {
    try {
      return exact::parse_poly(j.get<std::string>(), names, w);
    } catch (const Error& e) {
      throw at(path, e.what());
    }
  }
  array_at(j, path);
  WeightedPoly p(w);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string tp = path + "/" + std::to_string(t);
    const auto& e = array_at(field(j[t], "exponents", tp), tp + "/exponents");
    if (e.size() != w.size())
      throw at(tp + "/exponents", "expected " + std::to_string(w.size()) + " exponents");
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) {
      long x = integer(e[i], tp + "/exponents/" + std::to_string(i));
      if (x < 0) throw at(tp + "/exponents/" + std::to_string(i), "negative exponent");
      m.push_back(static_cast<int>(x));
    }
    p.add_term(m, rational_from(field(j[t], "coeff", tp), tp + "/coeff"));
  }
  return p;
}

inline json to_json(const RationalMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).str());
    out.push_back(std::move(row));
  }
  return out;
}

inline RationalMatrix matrix_from(const json& j, const std::string& path) {
  array_at(j, path);
  if (j.empty()) throw at(path, "empty matrix");
  const std::size_t cols = array_at(j[0], path + "/0").size();
  RationalMatrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string rp = path + "/" + std::to_string(i);
    if (array_at(j[i], rp).size() != cols) throw at(rp, "ragged matrix row");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = rational_from(j[i][k], rp + "/" + std::to_string(k));
  }
  return m;
}

inline json to_json(const PolyMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

inline PolyMatrix poly_matrix_from(const json& j, const std::vector<std::string>& names, const Weights& w,
                                   const std::string& path) {
  array_at(j, path);
  if (j.empty()) throw at(path, "empty matrix");
  const std::size_t cols = array_at(j[0], path + "/0").size();
  PolyMatrix m(j.size(), cols, w);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string rp = path + "/" + std::to_string(i);
    if (array_at(j[i], rp).size() != cols) throw at(rp, "ragged matrix row");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = poly_from(j[i][k], names, w, rp + "/" + std::to_string(k));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Divisors.

inline json to_json(const FreeDivisor& d) {
  json out;
  out["name"] = d.name;
  out["variables"] = d.variables;
  out["weights"] = d.weights;
  out["f"] = to_json(d.f);
  out["degree"] = d.degree;
  json frame = json::array();
  for (const auto& e : d.frame) {
    json fe;
    fe["name"] = e.name;
    fe["kind"] = divisor::to_string(e.kind);
    if (e.kind == divisor::FrameKind::w) fe["grade"] = e.grade;
    if (e.distinguished) fe["distinguished"] = true;
    json coeffs = json::array();
    for (const auto& c : e.field.coeffs()) coeffs.push_back(to_json(c));
    fe["coefficients"] = std::move(coeffs);
    frame.push_back(std::move(fe));
  }
  out["frame"] = std::move(frame);
  if (!d.euler.empty()) out["euler"] = d.euler;
  if (!d.factors.empty()) {
    json fs = json::array();
    for (const auto& f : d.factors) fs.push_back(to_json(f));
    out["factors"] = std::move(fs);
  }
  if (d.factor_matrix) out["factor_matrix"] = to_json(*d.factor_matrix);
  return out;
}

inline divisor::FrameKind kind_from(const json& j, const std::string& path) {
  auto s = text(j, path);
  if (s == "toral") return divisor::FrameKind::toral;
  if (s == "semisimple") return divisor::FrameKind::semisimple;
  if (s == "w") return divisor::FrameKind::w;
  throw at(path, "unknown frame kind '" + s + "'");
}

inline std::vector<std::vector<std::vector<Rational>>> constants_from(const json& j, std::size_t n,
                                                                      const std::string& path) {
  std::vector<std::vector<std::vector<Rational>>> c(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
  if (array_at(j, path).size() != n) throw at(path, "expected " + std::to_string(n) + " blocks");
  for (std::size_t i = 0; i < n; ++i) {
    auto m = matrix_from(j[i], path + "/" + std::to_string(i));
    if (m.rows() != n || m.cols() != n) throw at(path + "/" + std::to_string(i), "wrong block shape");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) c[i][a][b] = m(a, b);
  }
  return c;
}

// An inline divisor object, or a string naming a catalog entry.
inline FreeDivisor divisor_from(const json& j, const std::string& path = "") {
  if (j.is_string()) {
    try {
      return divisor::catalog(j.get<std::string>());
    } catch (const Error& e) {
      if (path.empty()) throw ParseError(e.what());
      throw at(path, e.what());
    }
  }
  FreeDivisor d;
  d.name = j.contains("name") ? text(j["name"], path + "/name") : "divisor";
  const auto& vars = array_at(field(j, "variables", path), path + "/variables");
  for (std::size_t i = 0; i < vars.size(); ++i) d.variables.push_back(text(vars[i], path + "/variables/" + std::to_string(i)));
  const auto& ws = array_at(field(j, "weights", path), path + "/weights");
  if (ws.size() != d.variables.size()) throw at(path + "/weights", "weights and variables differ in length");
  for (std::size_t i = 0; i < ws.size(); ++i) {
    long w = integer(ws[i], path + "/weights/" + std::to_string(i));
    if (w <= 0) throw at(path + "/weights/" + std::to_string(i), "weights must be positive");
    d.weights.push_back(static_cast<int>(w));
  }
  d.f = poly_from(field(j, "f", path), d.variables, d.weights, path + "/f");
  d.degree = static_cast<int>(integer(field(j, "degree", path), path + "/degree"));
  const auto& fr = array_at(field(j, "frame", path), path + "/frame");
  for (std::size_t i = 0; i < fr.size(); ++i) {
    const std::string fp = path + "/frame/" + std::to_string(i);
    divisor::FrameElement e;
    e.name = fr[i].contains("name") ? text(fr[i]["name"], fp + "/name") : "V" + std::to_string(i + 1);
    e.kind = kind_from(field(fr[i], "kind", fp), fp + "/kind");
    if (fr[i].contains("grade")) e.grade = static_cast<int>(integer(fr[i]["grade"], fp + "/grade"));
    if (fr[i].contains("distinguished")) {
      if (!fr[i]["distinguished"].is_boolean()) throw at(fp + "/distinguished", "expected a boolean");
      e.distinguished = fr[i]["distinguished"].get<bool>();
    }
    const auto& cs = array_at(field(fr[i], "coefficients", fp), fp + "/coefficients");
    if (cs.size() != d.variables.size()) throw at(fp + "/coefficients", "one coefficient per variable expected");
    std::vector<WeightedPoly> c;
    for (std::size_t k = 0; k < cs.size(); ++k)
      c.push_back(poly_from(cs[k], d.variables, d.weights, fp + "/coefficients/" + std::to_string(k)));
    e.field = divisor::VectorField(std::move(c));
    d.frame.push_back(std::move(e));
  }
  if (j.contains("euler")) {
    const auto& eu = array_at(j["euler"], path + "/euler");
    for (std::size_t i = 0; i < eu.size(); ++i)
      d.euler.push_back(static_cast<int>(integer(eu[i], path + "/euler/" + std::to_string(i))));
  }
  if (j.contains("factors")) {
    const auto& fs = array_at(j["factors"], path + "/factors");
    for (std::size_t i = 0; i < fs.size(); ++i)
      d.factors.push_back(poly_from(fs[i], d.variables, d.weights, path + "/factors/" + std::to_string(i)));
  }
  if (j.contains("factor_matrix")) d.factor_matrix = matrix_from(j["factor_matrix"], path + "/factor_matrix");
  try {
    divisor::check_shape(d);
  } catch (const divisor::DivisorError& e) {
    throw at(path, e.what());
  }
  if (j.contains("semisimple_constants")) {
    auto ad = divisor::algebroid_data(d, divisor::structure_functions(d));
    auto given = constants_from(j["semisimple_constants"], ad.semisimple.size(), path + "/semisimple_constants");
    if (given != ad.s) throw at(path + "/semisimple_constants", "constants disagree with the frame brackets");
  }
  return d;
}

// ---------------------------------------------------------------------------
// Residues, connections, points.

inline json to_json(const ResidueData& r) {
  json out;
  out["k"] = r.k();
  json s = json::array();
  for (const auto& m : r.s) s.push_back(to_json(m));
  out["s"] = std::move(s);
  out["positive_combination"] = r.positive_combination;
  if (r.chi) {
    json c = json::array();
    for (const auto& m : *r.chi) c.push_back(to_json(m));
    out["chi"] = std::move(c);
  }
  return out;
}

inline ResidueData residue_from(const json& j, const std::string& path = "") {
  ResidueData r;
  const auto& s = array_at(field(j, "s", path), path + "/s");
  for (std::size_t i = 0; i < s.size(); ++i) r.s.push_back(matrix_from(s[i], path + "/s/" + std::to_string(i)));
  if (j.contains("k") && static_cast<std::size_t>(integer(j["k"], path + "/k")) != r.s.size())
    throw at(path + "/k", "k differs from the number of S matrices");
  if (j.contains("positive_combination")) {
    const auto& pc = array_at(j["positive_combination"], path + "/positive_combination");
    for (std::size_t i = 0; i < pc.size(); ++i)
      r.positive_combination.push_back(
          static_cast<int>(integer(pc[i], path + "/positive_combination/" + std::to_string(i))));
  }
  if (j.contains("chi")) {
    const auto& c = array_at(j["chi"], path + "/chi");
    std::vector<RationalMatrix> chi;
    for (std::size_t i = 0; i < c.size(); ++i) chi.push_back(matrix_from(c[i], path + "/chi/" + std::to_string(i)));
    r.chi = std::move(chi);
  }
  for (const auto& m : r.s)
    if (!m.is_square()) throw at(path + "/s", "S matrices must be square");
  return r;
}

// A residue without positive_combination takes the divisor's Euler combination.
inline ResidueData complete_residue(ResidueData r, const FreeDivisor& d) {
  if (r.positive_combination.empty()) r.positive_combination = d.euler_combination();
  return r;
}

inline json to_json(const normalform::LogConnection& c, const json& divisor_ref) {
  json out;
  out["divisor"] = divisor_ref;
  json om = json::array();
  for (const auto& w : c.omega) om.push_back(to_json(w));
  out["omega"] = std::move(om);
  return out;
}

struct ConnectionFile {
  FreeDivisor divisor;
  normalform::LogConnection connection;
};

inline ConnectionFile connection_from(const json& j, const std::optional<FreeDivisor>& override_divisor = {},
                                      const std::string& path = "") {
  ConnectionFile cf;
  if (override_divisor) cf.divisor = *override_divisor;
  else cf.divisor = divisor_from(field(j, "divisor", path), path + "/divisor");
  const auto& om = array_at(field(j, "omega", path), path + "/omega");
  for (std::size_t i = 0; i < om.size(); ++i)
    cf.connection.omega.push_back(poly_matrix_from(om[i], cf.divisor.variables, cf.divisor.weights,
                                                   path + "/omega/" + std::to_string(i)));
  try {
    normalform::check_connection(cf.divisor, cf.connection);
  } catch (const Error& e) {
    throw at(path + "/omega", e.what());
  }
  return cf;
}

inline json to_json(const normalform::XFPoint& p) {
  json out, b = json::array(), n = json::array();
  for (const auto& m : p.b) b.push_back(to_json(m));
  for (const auto& m : p.n) n.push_back(to_json(m));
  out["b"] = std::move(b);
  out["n"] = std::move(n);
  return out;
}

// Either explicit "b"/"n" matrices or a "coordinates" vector.
inline normalform::XFPoint point_from(const json& j, const normalform::NormalFormData& nf, const std::string& path = "") {
  const auto& d = nf.setup.divisor;
  if (j.contains("coordinates")) {
    const auto& c = array_at(j["coordinates"], path + "/coordinates");
    std::vector<Rational> v;
    for (std::size_t i = 0; i < c.size(); ++i) v.push_back(rational_from(c[i], path + "/coordinates/" + std::to_string(i)));
    if (v.size() != nf.w1.dim() + nf.w2.dim())
      throw at(path + "/coordinates", "expected " + std::to_string(nf.w1.dim() + nf.w2.dim()) + " coordinates");
    return normalform::point_from_coordinates(nf, v);
  }
  normalform::XFPoint p;
  for (const char* key : {"b", "n"}) {
    const std::string kp = path + "/" + key;
    auto& dst = key[0] == 'b' ? p.b : p.n;
    const std::size_t want = key[0] == 'b' ? nf.setup.ad.wtype.size() : nf.setup.ad.toral.size();
    if (!j.contains(key)) {
      dst.assign(want, PolyMatrix(nf.setup.m(), nf.setup.m(), d.weights));
      continue;
    }
    const auto& a = array_at(j[key], kp);
    if (a.size() != want) throw at(kp, "expected " + std::to_string(want) + " matrices");
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto m = poly_matrix_from(a[i], d.variables, d.weights, kp + "/" + std::to_string(i));
      if (m.rows() != nf.setup.m() || m.cols() != nf.setup.m())
        throw at(kp + "/" + std::to_string(i), "matrix size differs from the residue rank");
      dst.push_back(std::move(m));
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Emitted systems.

inline json degree_table(const std::map<int, std::size_t>& t) {
  json out = json::object();
  for (const auto& [d, k] : t) out[std::to_string(d)] = k;
  return out;
}

inline std::map<int, std::size_t> degree_table_from(const json& j, const std::string& path) {
  if (!j.is_object()) throw at(path, "expected an object");
  std::map<int, std::size_t> out;
  for (const auto& [k, v] : j.items()) {
    int d = 0;
    try {
      d = std::stoi(k);
    } catch (const std::exception&) {
      throw at(path, "degree key '" + k + "' is not an integer");
    }
    out[d] = static_cast<std::size_t>(integer(v, path + "/" + k));
  }
  return out;
}

inline json to_json(const normalform::PolySystem& s) {
  json out;
  out["divisor"] = s.divisor;
  out["base_variables"] = s.base_variables;
  out["slot_names"] = s.slot_names;
  out["m"] = s.m;
  out["toral_slots"] = s.toral_slots;
  json sm;
  sm["dim_U_F"] = s.summary.dim_u_f();
  sm["dim_W2_per_slot"] = s.summary.dim_w2_slot();
  sm["dim_W2"] = s.summary.dim_w2_slot() * s.toral_slots;
  sm["aut_degree0"] = s.summary.aut_degree0();
  sm["aut_positive"] = s.summary.aut_positive();
  sm["U_F_by_degree"] = degree_table(s.summary.u_f);
  sm["W2_by_degree"] = degree_table(s.summary.w2_slot);
  sm["aut_by_degree"] = degree_table(s.summary.aut);
  out["summary"] = std::move(sm);
  json cs = json::array();
  for (const auto& c : s.coordinates) {
    json cj;
    cj["name"] = c.name;
    cj["family"] = normalform::to_string(c.family);
    cj["basis_index"] = c.basis_index;
    cj["slot"] = c.prov.slot;
    cj["degree"] = c.prov.degree;
    cj["row"] = c.prov.row;
    cj["col"] = c.prov.col;
    cj["monomial"] = c.prov.monomial;
    cs.push_back(std::move(cj));
  }
  out["coordinates"] = std::move(cs);
  json es = json::array();
  for (const auto& e : s.equations) {
    json ej;
    ej["label"] = normalform::equation_label(s, e);
    ej["tag"] = e.tag;
    ej["indices"] = e.indices;
    ej["row"] = e.row;
    ej["col"] = e.col;
    ej["base_monomial"] = e.base_monomial;
    ej["poly"] = to_json(e.poly);
    es.push_back(std::move(ej));
  }
  out["equations"] = std::move(es);
  return out;
}

inline std::vector<std::size_t> sizes_from(const json& j, const std::string& path) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < array_at(j, path).size(); ++i) {
    long x = integer(j[i], path + "/" + std::to_string(i));
    if (x < 0) throw at(path + "/" + std::to_string(i), "expected a non-negative integer");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

inline Monomial monomial_from(const json& j, std::size_t n, const std::string& path) {
  auto v = sizes_from(j, path);
  if (v.size() != n) throw at(path, "expected " + std::to_string(n) + " exponents");
  return Monomial(v.begin(), v.end());
}

inline std::size_t size_from(const json& j, const std::string& path) {
  long x = integer(j, path);
  if (x < 0) throw at(path, "expected a non-negative integer");
  return static_cast<std::size_t>(x);
}

inline normalform::PolySystem polysystem_from(const json& j, const std::string& path = "") {
  normalform::PolySystem s;
  s.divisor = text(field(j, "divisor", path), path + "/divisor");
  for (const auto& v : array_at(field(j, "base_variables", path), path + "/base_variables"))
    s.base_variables.push_back(text(v, path + "/base_variables"));
  for (const auto& v : array_at(field(j, "slot_names", path), path + "/slot_names"))
    s.slot_names.push_back(text(v, path + "/slot_names"));
  s.m = size_from(field(j, "m", path), path + "/m");
  s.toral_slots = size_from(field(j, "toral_slots", path), path + "/toral_slots");
  const auto& sm = field(j, "summary", path);
  s.summary.u_f = degree_table_from(field(sm, "U_F_by_degree", path + "/summary"), path + "/summary/U_F_by_degree");
  s.summary.w2_slot = degree_table_from(field(sm, "W2_by_degree", path + "/summary"), path + "/summary/W2_by_degree");
  s.summary.aut = degree_table_from(field(sm, "aut_by_degree", path + "/summary"), path + "/summary/aut_by_degree");
  const std::size_t nb = s.base_variables.size();
  const auto& cs = array_at(field(j, "coordinates", path), path + "/coordinates");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string cp = path + "/coordinates/" + std::to_string(i);
    normalform::Coordinate c;
    c.name = text(field(cs[i], "name", cp), cp + "/name");
    auto fam = text(field(cs[i], "family", cp), cp + "/family");
    if (fam == "W1") c.family = normalform::Family::w1;
    else if (fam == "W2") c.family = normalform::Family::w2;
    else throw at(cp + "/family", "unknown family '" + fam + "'");
    c.basis_index = size_from(field(cs[i], "basis_index", cp), cp + "/basis_index");
    c.prov.slot = size_from(field(cs[i], "slot", cp), cp + "/slot");
    c.prov.degree = static_cast<int>(integer(field(cs[i], "degree", cp), cp + "/degree"));
    c.prov.row = size_from(field(cs[i], "row", cp), cp + "/row");
    c.prov.col = size_from(field(cs[i], "col", cp), cp + "/col");
    c.prov.monomial = monomial_from(field(cs[i], "monomial", cp), nb, cp + "/monomial");
    s.coordinates.push_back(std::move(c));
  }
  const Weights cw(s.coordinates.size(), 1);
  auto names = s.coordinate_names();
  const auto& es = array_at(field(j, "equations", path), path + "/equations");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string ep = path + "/equations/" + std::to_string(i);
    normalform::Equation e;
    e.tag = text(field(es[i], "tag", ep), ep + "/tag");
    e.indices = sizes_from(field(es[i], "indices", ep), ep + "/indices");
    e.row = size_from(field(es[i], "row", ep), ep + "/row");
    e.col = size_from(field(es[i], "col", ep), ep + "/col");
    e.base_monomial = monomial_from(field(es[i], "base_monomial", ep), nb, ep + "/base_monomial");
    e.poly = poly_from(field(es[i], "poly", ep), names, cw, ep + "/poly");
    s.equations.push_back(std::move(e));
  }
  return s;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace logres::io
