#pragma once

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "logres/io/json.hpp"

namespace logres::cli {

using io::json;

struct Options {
  std::string command;
  std::string catalog, divisor, residue, connection, point, matrix, ansatz, output;
  std::string mode = "additive";
  std::string format = "text";
  std::uint64_t seed = 0;
  int trials = 8;
  bool strict = false;
};

// A finished command: the machine block, its text rendering, and whether a
// verification came out negative.
struct Report {
  json machine;
  std::string human;
  bool negative = false;
};

namespace detail {

inline std::string poly_text(const exact::WeightedPoly& p, const std::vector<std::string>& names) {
  return p.to_string(names);
}

inline json poly_matrix_text(const exact::PolyMatrix& m, const std::vector<std::string>& names) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).to_string(names));
    out.push_back(std::move(row));
  }
  return out;
}

inline std::string matrix_line(const json& rows) {
  std::string s = "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t k = 0; k < rows[i].size(); ++k) s += (k ? ", " : "") + rows[i][k].get<std::string>();
    s += "]";
  }
  return s + "]";
}

inline divisor::FreeDivisor load_divisor(const Options& o) {
  if (!o.catalog.empty() && !o.divisor.empty()) throw ParseError("give either --catalog or --divisor, not both");
  if (!o.catalog.empty()) return io::divisor_from(json(o.catalog));
  if (!o.divisor.empty()) {
    try {
      return io::divisor_from(io::read_file(o.divisor));
    } catch (const ParseError& e) {
      if (std::string(e.what()).rfind(o.divisor, 0) == 0) throw;
      throw ParseError(o.divisor + ": " + e.what());
    }
  }
  throw ParseError("a divisor is required: use --catalog NAME or --divisor FILE");
}

inline json read_required(const std::string& path, const char* flag) {
  if (path.empty()) throw ParseError(std::string("missing ") + flag + " FILE");
  return io::read_file(path);
}

template <class F>
auto with_file(const std::string& path, F f) {
  try {
    return f();
  } catch (const ParseError& e) {
    if (std::string(e.what()).rfind(path, 0) == 0) throw;
    throw ParseError(path + ": " + e.what());
  }
}

inline liealg::ResidueData load_residue(const Options& o, const divisor::FreeDivisor& d) {
  auto j = read_required(o.residue, "--residue");
  return with_file(o.residue, [&] { return io::complete_residue(io::residue_from(j), d); });
}

// ---------------------------------------------------------------------------

inline Report cmd_catalog(const Options& o) {
  Report r;
  if (o.catalog.empty() && o.divisor.empty()) {
    r.machine["catalog"] = divisor::catalog_names();
    for (const auto& n : divisor::catalog_names()) r.human += n + "\n";
    return r;
  }
  auto d = load_divisor(o);
  r.machine = io::to_json(d);
  r.human = r.machine.dump(2) + "\n";
  return r;
}

inline Report cmd_verify_divisor(const Options& o) {
  auto d = load_divisor(o);
  auto rep = divisor::verify_saito(d, o.trials, o.seed);
  auto eu = divisor::VectorField::euler(d.weights).apply(d.f);
  Report r;
  r.negative = !rep.ok;
  auto& m = r.machine;
  m["divisor"] = d.name;
  m["ok"] = rep.ok;
  m["message"] = rep.message;
  m["f"] = d.f.to_string(d.variables);
  m["degree"] = d.degree;
  m["euler_f"] = eu.to_string(d.variables);
  m["determinant"] = rep.det.to_string(d.variables);
  if (rep.ok || !rep.constant.is_zero()) m["constant"] = rep.constant.str();
  m["squarefree"] = exact::to_string(rep.squarefree);
  m["seed"] = o.seed;
  m["trials"] = o.trials;
  std::ostringstream h;
  h << "divisor " << d.name << ": " << (rep.ok ? "free (Saito criterion holds)" : "NOT verified") << "\n";
  h << "  f = " << m["f"].get<std::string>() << ", E(f) = " << d.degree << " f\n";
  h << "  det(frame) = " << m["determinant"].get<std::string>() << "\n";
  if (m.contains("constant")) h << "  det = c f with c = " << m["constant"].get<std::string>() << "\n";
  h << "  squarefree test: " << m["squarefree"].get<std::string>() << " (seed " << o.seed << ", " << o.trials
    << " lines)\n";
  if (!rep.ok) h << "  " << rep.message << "\n";
  r.human = h.str();
  return r;
}

inline Report cmd_frame_info(const Options& o) {
  auto d = load_divisor(o);
  auto sf = divisor::structure_functions(d);
  auto ad = divisor::algebroid_data(d, sf);
  const auto& names = d.variables;
  Report r;
  auto& m = r.machine;
  std::ostringstream h;
  m["divisor"] = d.name;
  h << "divisor " << d.name << " in " << d.n() << " variables, f of degree " << d.degree << "\n";

  json frame = json::array();
  h << "frame:\n";
  for (const auto& e : d.frame) {
    json fe;
    fe["name"] = e.name;
    fe["kind"] = divisor::to_string(e.kind);
    if (e.kind == divisor::FrameKind::w) fe["grade"] = e.grade;
    json c = json::array();
    std::string line;
    for (std::size_t k = 0; k < d.n(); ++k) {
      c.push_back(e.field[k].to_string(names));
      if (e.field[k].is_zero()) continue;
      line += (line.empty() ? "" : " + ") + std::string("(") + e.field[k].to_string(names) + ") d/d" + names[k];
    }
    fe["coefficients"] = std::move(c);
    h << "  " << e.name << " [" << divisor::to_string(e.kind);
    if (e.kind == divisor::FrameKind::w) h << ", grade " << e.grade;
    h << "] = " << (line.empty() ? "0" : line) << "\n";
    frame.push_back(std::move(fe));
  }
  m["frame"] = std::move(frame);

  json brackets = json::array();
  h << "brackets:\n";
  for (std::size_t i = 0; i < d.n(); ++i)
    for (std::size_t j = i + 1; j < d.n(); ++j) {
      json terms = json::object();
      std::string line;
      for (std::size_t k = 0; k < d.n(); ++k) {
        if (sf(i, j, k).is_zero()) continue;
        terms[d.frame[k].name] = sf(i, j, k).to_string(names);
        line += (line.empty() ? "" : " + ") + std::string("(") + sf(i, j, k).to_string(names) + ") " +
                d.frame[k].name;
      }
      brackets.push_back({{"left", d.frame[i].name}, {"right", d.frame[j].name}, {"terms", terms}});
      h << "  [" << d.frame[i].name << ", " << d.frame[j].name << "] = " << (line.empty() ? "0" : line) << "\n";
    }
  m["brackets"] = std::move(brackets);

  auto dl = divisor::dlog_f_expansion(d);
  json dlj = json::object();
  h << "dlog f in the dual frame:";
  for (std::size_t i = 0; i < d.n(); ++i) {
    dlj[d.frame[i].name] = dl[i].to_string(names);
    h << " " << d.frame[i].name << ": " << dl[i].to_string(names) << (i + 1 < d.n() ? "," : "\n");
  }
  m["dlog_f"] = std::move(dlj);

  auto fs = divisor::form_structure_equations(sf);
  json fsj = json::object();
  h << "structure equations of the dual forms:\n";
  for (std::size_t k = 0; k < d.n(); ++k) {
    json terms = json::array();
    std::string line;
    for (const auto& t : fs[k]) {
      terms.push_back({{"wedge", {d.frame[t.i].name, d.frame[t.j].name}}, {"coeff", t.coeff.to_string(names)}});
      line += (line.empty() ? "" : " + ") + std::string("(") + t.coeff.to_string(names) + ") xi_" + d.frame[t.i].name +
              "^xi_" + d.frame[t.j].name;
    }
    fsj[d.frame[k].name] = std::move(terms);
    h << "  d xi_" << d.frame[k].name << " = " << (line.empty() ? "0" : line) << "\n";
  }
  m["form_structure"] = std::move(fsj);

  json n = json::array();
  for (const auto& row : ad.n) {
    json x = json::array();
    for (const auto& v : row) x.push_back(v.str());
    n.push_back(std::move(x));
  }
  m["euler_combination"] = ad.euler;
  m["grades"] = ad.grades;
  m["toral_weights"] = std::move(n);

  auto dpi = divisor::compute_dpi(d);
  json dj = json::array();
  h << "dpi on the frame:\n";
  for (std::size_t a = 0; a < dpi.value.size(); ++a) {
    json row = json::object();
    h << "  dpi_" << a + 1 << ":";
    for (std::size_t i = 0; i < d.n(); ++i) {
      row[d.frame[i].name] = dpi.value[a][i].to_string(names);
      h << " " << d.frame[i].name << " -> " << dpi.value[a][i].to_string(names) << (i + 1 < d.n() ? "," : "\n");
    }
    dj.push_back(std::move(row));
  }
  m["dpi"] = std::move(dj);
  r.human = h.str();
  return r;
}

inline json dims_json(const std::map<int, std::size_t>& t) { return io::degree_table(t); }

inline std::string dims_text(const std::map<int, std::size_t>& t) {
  std::string s;
  std::size_t total = 0;
  for (const auto& [d, k] : t) {
    s += (s.empty() ? "" : ", ") + std::string("deg ") + std::to_string(d) + ": " + std::to_string(k);
    total += k;
  }
  return std::to_string(total) + (s.empty() ? "" : " (" + s + ")");
}

inline Report cmd_residue_space(const Options& o) {
  auto d = load_divisor(o);
  auto res = load_residue(o, d);
  Report r;
  auto& m = r.machine;
  m["divisor"] = d.name;
  auto ad = divisor::algebroid_data(d, divisor::structure_functions(d));
  auto check = res;
  if (!check.chi) check.chi = std::vector<exact::RationalMatrix>(ad.semisimple.size(), exact::RationalMatrix(res.m(), res.m()));
  auto rep = liealg::validate_residue(check, ad.s);
  m["residue_ok"] = rep.ok;
  m["message"] = rep.message;
  if (!rep.ok) {
    r.negative = true;
    r.human = "residue rejected: " + rep.message + "\n";
    return r;
  }
  auto nf = normalform::analyze(d, res);
  const auto& st = nf.setup;
  auto eig = normalform::detail::ad_d_eigenvalues(st);
  m["m"] = st.m();
  m["D"] = io::to_json(st.residue.d());
  m["ad_D_integer_eigenvalues"] = eig;
  m["centralizer_dim"] = liealg::centralizer_algebra(st.residue.s, st.m()).size();
  auto basis_json = [&](const normalform::SolutionSpace& sp) {
    json out = json::array();
    for (const auto& b : sp.basis) {
      json e;
      e["degree"] = b.degree;
      e["slot"] = b.prov.slot;
      e["pivot"] = {b.prov.row + 1, b.prov.col + 1};
      e["monomial"] = exact::monomial_string(b.prov.monomial, d.variables);
      json v = json::array();
      for (const auto& x : b.value) v.push_back(poly_matrix_text(x, d.variables));
      e["value"] = std::move(v);
      out.push_back(std::move(e));
    }
    return out;
  };
  m["U_F"] = {{"dim", nf.w1.dim()}, {"by_degree", dims_json(nf.w1.dims())}, {"basis", basis_json(nf.w1)}};
  auto one = nf.w2.dims(0);
  m["W2"] = {{"dim_per_slot", nf.w2.dim() / std::max<std::size_t>(1, nf.w2.slots)},
             {"slots", nf.w2.slots},
             {"by_degree", dims_json(one)},
             {"basis", basis_json(nf.w2)}};
  m["aut"] = {{"dim", nf.aut.dim()}, {"by_degree", dims_json(nf.aut.dims())}, {"basis", basis_json(nf.aut)}};
  std::ostringstream h;
  h << "divisor " << d.name << ", residue of rank " << st.m() << "\n";
  h << "  D = " << st.residue.d().to_string() << "\n";
  h << "  integer eigenvalues of ad D:";
  for (auto l : eig) h << " " << l;
  h << "\n  centralizer of S: dim " << m["centralizer_dim"].get<std::size_t>() << "\n";
  h << "  U_F: dim " << dims_text(nf.w1.dims()) << "\n";
  h << "  W2 per toral slot: dim " << dims_text(one) << " x " << nf.w2.slots << "\n";
  h << "  aut: dim " << dims_text(nf.aut.dims()) << "\n";
  r.human = h.str();
  return r;
}

inline std::string system_text(const normalform::PolySystem& s) {
  std::ostringstream h;
  const auto& sm = s.summary;
  h << "moduli system for " << s.divisor << ", rank " << s.m << "\n";
  h << "  dim U_F = " << dims_text(sm.u_f) << "\n";
  h << "  dim W2 = " << sm.dim_w2_slot() * s.toral_slots << " = " << s.toral_slots << " x "
    << dims_text(sm.w2_slot) << "\n";
  h << "  dim aut = " << sm.aut_degree0() << " in degree 0, " << sm.aut_positive() << " in positive degree\n";
  h << "coordinates (" << s.coordinates.size() << "):\n";
  for (const auto& c : s.coordinates) {
    h << "  " << c.name << ": " << normalform::to_string(c.family) << " ";
    if (c.family == normalform::Family::w1) h << s.slot_names.at(c.prov.slot);
    else h << "slot " << c.prov.slot + 1;
    h << ", degree " << c.prov.degree << ", entry [" << c.prov.row + 1 << "," << c.prov.col + 1 << "] "
      << exact::monomial_string(c.prov.monomial, s.base_variables) << "\n";
  }
  h << "equations (" << s.equations.size() << "):\n";
  auto names = s.coordinate_names();
  for (const auto& e : s.equations)
    h << "  " << normalform::equation_label(s, e) << ": " << e.poly.to_string(names) << " = 0\n";
  return h.str();
}

struct Ansatz {
  std::vector<std::string> variables;
  std::map<std::string, exact::WeightedPoly> values;
};

inline Ansatz ansatz_from(const json& j) {
  Ansatz a;
  const auto& vars = io::array_at(io::field(j, "variables", ""), "/variables");
  for (std::size_t i = 0; i < vars.size(); ++i) a.variables.push_back(io::text(vars[i], "/variables/" + std::to_string(i)));
  const exact::Weights w(a.variables.size(), 1);
  const auto& subs = io::field(j, "substitutions", "");
  if (!subs.is_object()) throw io::at("/substitutions", "expected an object");
  for (const auto& [k, v] : subs.items()) a.values.emplace(k, io::poly_from(v, a.variables, w, "/substitutions/" + k));
  return a;
}

inline Report cmd_emit_moduli(const Options& o) {
  auto d = load_divisor(o);
  auto res = load_residue(o, d);
  auto nf = normalform::analyze(d, res);
  auto sys = normalform::emit_xf(nf);
  Report r;
  r.machine = io::to_json(sys);
  r.human = system_text(sys);
  if (!o.output.empty()) {
    std::ofstream f(o.output);
    if (!f) throw ParseError(o.output + ": cannot write file");
    f << io::dump(r.machine);
  }
  if (o.ansatz.empty()) return r;

  auto aj = read_required(o.ansatz, "--ansatz");
  auto an = with_file(o.ansatz, [&] { return ansatz_from(aj); });
  std::vector<normalform::NamedEquation> eqs;
  try {
    eqs = normalform::substitute(sys, an.variables, an.values);
  } catch (const normalform::NormalFormError& e) {
    throw ParseError(o.ansatz + ": " + e.what());
  }
  auto cert = normalform::linear_propagation(eqs, an.variables);
  json rj;
  rj["variables"] = an.variables;
  json ej = json::array();
  for (const auto& e : eqs) ej.push_back({{"label", e.label}, {"poly", e.poly.to_string(an.variables)}});
  rj["equations"] = std::move(ej);
  json steps = json::array();
  for (const auto& s : cert.steps) steps.push_back({{"variable", s.variable}, {"value", s.value.str()}});
  rj["determined"] = std::move(steps);
  rj["inconsistent"] = cert.inconsistent;
  if (cert.inconsistent) {
    json fl = json::array();
    for (const auto& p : cert.final_linear) fl.push_back(p.to_string(an.variables));
    json y = json::array();
    for (const auto& v : cert.y) y.push_back(v.str());
    rj["certificate"] = {{"linear_equations", fl}, {"multipliers", y}, {"residual", cert.residual.str()}};
  }
  json out;
  out["system"] = std::move(r.machine);
  out["restriction"] = std::move(rj);
  r.machine = std::move(out);
  std::ostringstream h;
  h << "restricted to " << an.values.size() << " substituted coordinates, " << eqs.size() << " equations remain:\n";
  for (const auto& e : eqs) h << "  " << e.label << ": " << e.poly.to_string(an.variables) << " = 0\n";
  for (const auto& s : cert.steps) h << "  forced: " << s.variable << " = " << s.value.str() << "\n";
  if (cert.inconsistent) {
    r.negative = true;
    h << "  INCONSISTENT: the combination";
    for (std::size_t i = 0; i < cert.y.size(); ++i)
      if (!cert.y[i].is_zero()) h << " (" << cert.y[i].str() << ")*[" << cert.final_linear[i].to_string(an.variables) << "]";
    h << " is the nonzero constant " << (-cert.residual).str() << "\n";
  } else {
    h << "  no linear inconsistency found\n";
  }
  r.human += h.str();
  return r;
}

inline Report cmd_check_flat(const Options& o) {
  auto cj = read_required(o.connection, "--connection");
  std::optional<divisor::FreeDivisor> given;
  if (!o.catalog.empty() || !o.divisor.empty()) given = load_divisor(o);
  auto cf = with_file(o.connection, [&] { return io::connection_from(cj, given); });
  const auto& d = cf.divisor;
  auto curv = normalform::curvature(d, divisor::structure_functions(d), cf.connection);
  Report r;
  auto& m = r.machine;
  m["divisor"] = d.name;
  json nz = json::array();
  std::ostringstream h;
  for (const auto& e : curv) {
    if (e.value.is_zero()) continue;
    nz.push_back({{"pair", {d.frame[e.i].name, d.frame[e.j].name}}, {"value", poly_matrix_text(e.value, d.variables)}});
    h << "  R(" << d.frame[e.i].name << ", " << d.frame[e.j].name << ") = " << matrix_line(nz.back()["value"]) << "\n";
  }
  r.negative = !nz.empty();
  m["flat"] = nz.empty();
  m["nonzero_curvature"] = std::move(nz);
  r.human = "connection on " + d.name + ": " + (r.negative ? "NOT flat\n" + h.str() : "flat\n");
  return r;
}

inline Report cmd_check_point(const Options& o) {
  auto d = load_divisor(o);
  auto res = load_residue(o, d);
  auto nf = normalform::analyze(d, res);
  auto sys = normalform::emit_xf(nf);
  auto pj = read_required(o.point, "--point");
  auto p = with_file(o.point, [&] { return io::point_from(pj, nf); });
  auto c = normalform::check_xf_point(nf, sys, p);
  Report r;
  r.negative = !c.in_xf();
  auto& m = r.machine;
  m["divisor"] = d.name;
  m["in_space"] = c.in_space;
  if (c.in_space) {
    json co = json::object();
    for (std::size_t i = 0; i < c.coordinates.size(); ++i) co[sys.coordinates[i].name] = c.coordinates[i].str();
    m["coordinates"] = std::move(co);
  }
  m["flat"] = c.flat;
  m["equations_hold"] = c.equations_hold;
  m["nilpotent"] = c.nilpotent;
  m["emitted_agrees"] = c.emitted_agrees;
  m["in_X_F"] = c.in_xf();
  m["violated"] = c.violated;
  auto conn = normalform::detail::assemble(nf, p);
  json comps = json::object();
  for (std::size_t i = 0; i < d.n(); ++i) comps[d.frame[i].name] = poly_matrix_text(conn.omega[i], d.variables);
  m["connection"] = std::move(comps);
  std::ostringstream h;
  h << "point on " << d.name << ": " << (c.in_xf() ? "in X_F" : "NOT in X_F") << "\n";
  h << "  in U_F x W2: " << (c.in_space ? "yes" : "no") << ", flat: " << (c.flat ? "yes" : "no")
    << ", equations hold: " << (c.equations_hold ? "yes" : "no") << ", N nilpotent: " << (c.nilpotent ? "yes" : "no")
    << "\n";
  for (std::size_t i = 0; i < d.n(); ++i)
    h << "  omega(" << d.frame[i].name << ") = " << matrix_line(m["connection"][d.frame[i].name]) << "\n";
  for (const auto& v : c.violated) h << "  violated: " << v << "\n";
  if (!c.consistent()) h << "  WARNING: flatness and the emitted equations disagree\n";
  r.human = h.str();
  return r;
}

inline Report cmd_jordan(const Options& o) {
  auto mj = read_required(o.matrix, "--matrix");
  auto a = with_file(o.matrix, [&] {
    return mj.is_object() ? io::matrix_from(io::field(mj, "matrix", ""), "/matrix") : io::matrix_from(mj, "");
  });
  if (!a.is_square()) throw ParseError(o.matrix + ": matrix is not square");
  liealg::JCMode mode;
  if (o.mode == "additive") mode = liealg::JCMode::additive;
  else if (o.mode == "multiplicative") mode = liealg::JCMode::multiplicative;
  else throw ParseError("unknown --mode '" + o.mode + "'");
  if (mode == liealg::JCMode::multiplicative && !exact::inverse(a))
    throw ParseError(o.matrix + ": multiplicative decomposition needs an invertible matrix");
  auto jc = liealg::jordan_chevalley(a, mode);
  Report r;
  auto& m = r.machine;
  m["mode"] = o.mode;
  m["input"] = io::to_json(a);
  m["S"] = io::to_json(jc.s);
  std::ostringstream h;
  h << o.mode << " Jordan-Chevalley decomposition\n  S = " << jc.s.to_string() << "\n";
  if (mode == liealg::JCMode::additive) {
    m["N"] = io::to_json(jc.rest);
    h << "  N = " << jc.rest.to_string() << "\n";
  } else {
    auto lu = liealg::log_unipotent(jc.rest);
    m["U"] = io::to_json(jc.rest);
    m["log_U"] = io::to_json(lu);
    h << "  U = " << jc.rest.to_string() << "\n  log U = " << lu.to_string() << "\n";
  }
  r.human = h.str();
  return r;
}

}  // namespace detail

inline Report dispatch(const Options& o) {
  if (o.command == "catalog") return detail::cmd_catalog(o);
  if (o.command == "verify-divisor") return detail::cmd_verify_divisor(o);
  if (o.command == "frame-info") return detail::cmd_frame_info(o);
  if (o.command == "residue-space") return detail::cmd_residue_space(o);
  if (o.command == "emit-moduli") return detail::cmd_emit_moduli(o);
  if (o.command == "check-flat") return detail::cmd_check_flat(o);
  if (o.command == "check-point") return detail::cmd_check_point(o);
  if (o.command == "jordan") return detail::cmd_jordan(o);
  throw ParseError("unknown command '" + o.command + "'");
}

// Exit codes: 0 success, 1 negative finding under --strict, 2 malformed input.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"logres: logarithmic connections along free divisors"};
  app.require_subcommand(1, 1);
  Options o;
  auto common = [&](CLI::App* sc, bool divisor_flags) {
    if (divisor_flags) {
      sc->add_option("--catalog", o.catalog, "catalog divisor name");
      sc->add_option("--divisor", o.divisor, "divisor JSON file");
    }
    sc->add_option("--seed", o.seed, "seed for randomized checks");
    sc->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    sc->add_flag("--strict", o.strict, "exit 1 on a negative verification result");
  };
  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"catalog", "list catalog divisors or print one as JSON"},
      {"verify-divisor", "check Saito's criterion"},
      {"frame-info", "brackets, dual forms and dpi of the frame"},
      {"residue-space", "solution spaces for a residue"},
      {"emit-moduli", "emit the polynomial system cutting out X_F"},
      {"check-flat", "curvature of a connection"},
      {"check-point", "test a point of U_F x W2 for membership in X_F"},
      {"jordan", "Jordan-Chevalley decomposition of a matrix"},
  };
  for (const auto& s : commands) {
    auto* sc = app.add_subcommand(s.name, s.help);
    const std::string n = s.name;
    common(sc, n != "jordan");
    if (n == "verify-divisor") sc->add_option("--trials", o.trials, "lines sampled by the squarefree test");
    if (n == "residue-space" || n == "emit-moduli" || n == "check-point")
      sc->add_option("--residue", o.residue, "residue JSON file");
    if (n == "emit-moduli") {
      sc->add_option("--ansatz", o.ansatz, "substitution JSON file");
      sc->add_option("--output", o.output, "write the system JSON here");
    }
    if (n == "check-flat") sc->add_option("--connection", o.connection, "connection JSON file");
    if (n == "check-point") sc->add_option("--point", o.point, "point JSON file");
    if (n == "jordan") {
      sc->add_option("--matrix", o.matrix, "matrix JSON file");
      sc->add_option("--mode", o.mode, "additive or multiplicative")
          ->check(CLI::IsMember({"additive", "multiplicative"}));
    }
    sc->callback([&o, n] { o.command = n; });
  }

  std::vector<const char*> argv{"logres"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  Report r;
  try {
    r = dispatch(o);
  } catch (const ParseError& e) {
    err << "logres: " << e.what() << "\n";
    return 2;
  } catch (const divisor::DivisorError& e) {
    err << "logres: invalid divisor: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "logres: " << e.what() << "\n";
    return 2;
  }
  if (o.format == "json") out << io::dump(r.machine);
  else out << r.human;
  return r.negative && o.strict ? 1 : 0;
}

}  // namespace logres::cli
