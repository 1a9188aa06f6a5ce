#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logres/normalform/solve.hpp"

namespace logres::normalform {

// Residue, divisor and the three solution spaces.
struct NormalFormData {
  Setup setup;
  SolutionSpace w1, w2, aut;
};

inline NormalFormData analyze(const FreeDivisor& d, const ResidueData& r) {
  auto st = make_setup(d, r);
  auto w1 = solve_w1(st);
  auto w2 = solve_w2(st);
  auto aut = symmetry_algebra(st);
  return {std::move(st), std::move(w1), std::move(w2), std::move(aut)};
}

// Polynomial in the coordinates whose coefficients are matrices over the
// base ring. Keys are coordinate monomials.
class CoordMatrix {
 public:
  CoordMatrix(std::size_t ncoords, std::size_t m, Weights base)
      : nc_(ncoords), m_(m), base_(std::move(base)) {}

  static CoordMatrix constant(std::size_t ncoords, const PolyMatrix& p) {
    CoordMatrix c(ncoords, p.rows(), p.weights());
    c.add(Monomial(ncoords, 0), p);
    return c;
  }
  // sum_t coord_t * M_t
  static CoordMatrix linear(std::size_t ncoords, std::size_t m, const Weights& base,
                            const std::vector<std::pair<std::size_t, PolyMatrix>>& parts) {
    CoordMatrix c(ncoords, m, base);
    for (const auto& [t, mat] : parts) {
      Monomial mo(ncoords, 0);
      mo[t] = 1;
      c.add(mo, mat);
    }
    return c;
  }

  const std::map<Monomial, PolyMatrix>& terms() const { return t_; }

  void add(const Monomial& mo, const PolyMatrix& p) {
    if (p.is_zero()) return;
    auto it = t_.find(mo);
    if (it == t_.end()) {
      t_.emplace(mo, p);
      return;
    }
    it->second += p;
    if (it->second.is_zero()) t_.erase(it);
  }

  CoordMatrix& operator+=(const CoordMatrix& o) {
    for (const auto& [mo, p] : o.t_) add(mo, p);
    return *this;
  }
  CoordMatrix& operator-=(const CoordMatrix& o) {
    for (const auto& [mo, p] : o.t_) add(mo, -p);
    return *this;
  }
  friend CoordMatrix operator+(CoordMatrix a, const CoordMatrix& b) { return a += b; }
  friend CoordMatrix operator-(CoordMatrix a, const CoordMatrix& b) { return a -= b; }
  friend CoordMatrix operator*(const WeightedPoly& s, const CoordMatrix& a) {
    CoordMatrix r(a.nc_, a.m_, a.base_);
    for (const auto& [mo, p] : a.t_) r.add(mo, s * p);
    return r;
  }
  friend CoordMatrix operator*(const CoordMatrix& a, const CoordMatrix& b) {
    CoordMatrix r(a.nc_, a.m_, a.base_);
    for (const auto& [ma, pa] : a.t_)
      for (const auto& [mb, pb] : b.t_) r.add(exact::mono_mul(ma, mb), pa * pb);
    return r;
  }

  CoordMatrix apply(const VectorField& v) const {
    CoordMatrix r(nc_, m_, base_);
    for (const auto& [mo, p] : t_) r.add(mo, v.apply(p));
    return r;
  }

  std::size_t ncoords() const { return nc_; }
  std::size_t m() const { return m_; }
  const Weights& base() const { return base_; }

 private:
  std::size_t nc_, m_;
  Weights base_;
  std::map<Monomial, PolyMatrix> t_;
};

inline CoordMatrix reversed_bracket(const CoordMatrix& a, const CoordMatrix& b) { return b * a - a * b; }

struct Coordinate {
  std::string name;
  Family family = Family::w1;
  std::size_t basis_index = 0;  // position inside its solution space
  Provenance prov;

  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

// One scalar equation: the coefficient of a base monomial in one entry of a
// tagged residual, as a polynomial in the coordinates.
struct Equation {
  std::string tag;  // curvature, ZN, NN, nilpotency
  std::vector<std::size_t> indices;
  std::size_t row = 0, col = 0;
  Monomial base_monomial;
  WeightedPoly poly;

  friend bool operator==(const Equation&, const Equation&) = default;
};

// Dimension tables by E-degree. W2 is reported per toral slot.
struct SpaceSummary {
  std::map<int, std::size_t> u_f, w2_slot, aut;

  static std::size_t total(const std::map<int, std::size_t>& t) {
    std::size_t n = 0;
    for (const auto& [d, k] : t) n += k;
    return n;
  }
  std::size_t dim_u_f() const { return total(u_f); }
  std::size_t dim_w2_slot() const { return total(w2_slot); }
  std::size_t aut_degree0() const {
    auto it = aut.find(0);
    return it == aut.end() ? 0 : it->second;
  }
  std::size_t aut_positive() const { return total(aut) - aut_degree0(); }

  friend bool operator==(const SpaceSummary&, const SpaceSummary&) = default;
};

struct PolySystem {
  std::string divisor;
  std::vector<std::string> base_variables;
  std::vector<std::string> slot_names;  // W-type frame elements
  std::size_t m = 0;
  std::size_t toral_slots = 0;
  SpaceSummary summary;
  std::vector<Coordinate> coordinates;
  std::vector<Equation> equations;

  friend bool operator==(const PolySystem&, const PolySystem&) = default;

  std::vector<std::string> coordinate_names() const {
    std::vector<std::string> out;
    for (const auto& c : coordinates) out.push_back(c.name);
    return out;
  }
  Weights coordinate_weights() const { return Weights(coordinates.size(), 1); }
  std::size_t count(const std::string& tag) const {
    return static_cast<std::size_t>(
        std::count_if(equations.begin(), equations.end(), [&](const Equation& e) { return e.tag == tag; }));
  }
  std::optional<std::size_t> coordinate_index(const std::string& name) const {
    for (std::size_t i = 0; i < coordinates.size(); ++i)
      if (coordinates[i].name == name) return i;
    return std::nullopt;
  }
};

inline std::string equation_label(const PolySystem& sys, const Equation& e) {
  std::string s = e.tag + "(";
  for (std::size_t i = 0; i < e.indices.size(); ++i) {
    if (i) s += ",";
    s += e.tag == "curvature" || (e.tag == "ZN" && i == 0) ? sys.slot_names.at(e.indices[i])
                                                          : std::to_string(e.indices[i] + 1);
  }
  s += ")[" + std::to_string(e.row + 1) + "," + std::to_string(e.col + 1) + "] " +
       exact::monomial_string(e.base_monomial, sys.base_variables);
  return s;
}

namespace detail {

inline void collect(const CoordMatrix& x, const std::string& tag, std::vector<std::size_t> idx,
                    std::vector<Equation>& out) {
  const Weights cw(x.ncoords(), 1);
  for (std::size_t r = 0; r < x.m(); ++r)
    for (std::size_t c = 0; c < x.m(); ++c) {
      std::map<Monomial, WeightedPoly, exact::GrlexGreater> acc;
      for (const auto& [cm, p] : x.terms())
        for (const auto& [bm, coef] : p(r, c).terms())
          acc.try_emplace(bm, WeightedPoly(cw)).first->second.add_term(cm, coef);
      for (auto& [bm, poly] : acc)
        if (!poly.is_zero()) out.push_back({tag, idx, r, c, bm, std::move(poly)});
    }
}

inline std::vector<std::string> w_names(const Setup& st) {
  std::vector<std::string> out;
  for (auto j : st.ad.wtype) out.push_back(st.divisor.frame[j].name);
  return out;
}

}  // namespace detail

inline std::vector<Coordinate> coordinates_of(const NormalFormData& nf) {
  std::vector<Coordinate> out;
  for (std::size_t t = 0; t < nf.w1.basis.size(); ++t)
    out.push_back({"u" + std::to_string(t + 1), Family::w1, t, nf.w1.basis[t].prov});
  std::vector<std::size_t> per_slot(nf.w2.slots, 0);
  for (std::size_t t = 0; t < nf.w2.basis.size(); ++t) {
    const auto& p = nf.w2.basis[t].prov;
    out.push_back({"n" + std::to_string(p.slot + 1) + "_" + std::to_string(++per_slot[p.slot]), Family::w2,
                   t, p});
  }
  return out;
}

// Emits the tagged equations cutting out X_F inside U_F x W2^k:
//   curvature(i,j): [B_i,B_j] + Z_i(B_j) - Z_j(B_i) - sum gamma B - sum alpha S - sum beta chi
//   ZN(j,a):        Z_j(N_a) - [N_a, B_j]
//   NN(a,b):        [N_a, N_b]
//   nilpotency(a):  N_a^m
// with every bracket in the reversed convention.
inline PolySystem emit_xf(const NormalFormData& nf) {
  const Setup& st = nf.setup;
  const auto& ad = st.ad;
  const std::size_t m = st.m(), nw = ad.wtype.size(), nt = ad.toral.size();
  const Weights& w = st.weights();

  PolySystem sys;
  sys.divisor = st.divisor.name;
  sys.base_variables = st.divisor.variables;
  sys.slot_names = detail::w_names(st);
  sys.m = m;
  sys.toral_slots = nt;
  sys.summary.u_f = nf.w1.dims();
  sys.summary.w2_slot = nf.w2.dims(0);
  sys.summary.aut = nf.aut.dims();
  sys.coordinates = coordinates_of(nf);
  const std::size_t nc = sys.coordinates.size();
  const std::size_t off = nf.w1.basis.size();

  std::vector<CoordMatrix> b, n;
  for (std::size_t j = 0; j < nw; ++j) {
    std::vector<std::pair<std::size_t, PolyMatrix>> parts;
    for (std::size_t t = 0; t < nf.w1.basis.size(); ++t) parts.push_back({t, nf.w1.basis[t].value[j]});
    b.push_back(CoordMatrix::linear(nc, m, w, parts));
  }
  for (std::size_t a = 0; a < nt; ++a) {
    std::vector<std::pair<std::size_t, PolyMatrix>> parts;
    for (std::size_t t = 0; t < nf.w2.basis.size(); ++t)
      if (nf.w2.basis[t].prov.slot == a) parts.push_back({off + t, nf.w2.basis[t].value[a]});
    n.push_back(CoordMatrix::linear(nc, m, w, parts));
  }

  auto& eq = sys.equations;
  for (std::size_t i = 0; i < nw; ++i)
    for (std::size_t j = i + 1; j < nw; ++j) {
      CoordMatrix r = reversed_bracket(b[i], b[j]) + b[j].apply(st.w_field(i)) - b[i].apply(st.w_field(j));
      for (std::size_t k = 0; k < nw; ++k)
        if (!ad.gamma[i][j][k].is_zero()) r -= ad.gamma[i][j][k] * b[k];
      PolyMatrix rhs(m, m, w);
      for (std::size_t a = 0; a < nt; ++a)
        if (!ad.alpha[i][j][a].is_zero()) rhs += ad.alpha[i][j][a] * st.s_poly(a);
      for (std::size_t l = 0; l < ad.semisimple.size(); ++l)
        if (!ad.beta[i][j][l].is_zero()) rhs += ad.beta[i][j][l] * st.chi_poly(l);
      r -= CoordMatrix::constant(nc, rhs);
      detail::collect(r, "curvature", {i, j}, eq);
    }
  for (std::size_t j = 0; j < nw; ++j)
    for (std::size_t a = 0; a < nt; ++a)
      detail::collect(n[a].apply(st.w_field(j)) - reversed_bracket(n[a], b[j]), "ZN", {j, a}, eq);
  for (std::size_t a = 0; a < nt; ++a)
    for (std::size_t c = a + 1; c < nt; ++c) detail::collect(reversed_bracket(n[a], n[c]), "NN", {a, c}, eq);
  for (std::size_t a = 0; a < nt; ++a) {
    CoordMatrix p = n[a];
    for (std::size_t e = 1; e < m; ++e) p = p * n[a];
    detail::collect(p, "nilpotency", {a}, eq);
  }
  return sys;
}

inline std::vector<Rational> evaluate(const PolySystem& sys, const std::vector<Rational>& coords) {
  if (coords.size() != sys.coordinates.size())
    throw NormalFormError("expected " + std::to_string(sys.coordinates.size()) + " coordinates, got " +
                          std::to_string(coords.size()));
  std::vector<Rational> out;
  for (const auto& e : sys.equations) out.push_back(e.poly.evaluate(coords));
  return out;
}

// ---------------------------------------------------------------------------
// Points of U_F x W2^k.

struct XFPoint {
  std::vector<PolyMatrix> b;  // one per W-type element
  std::vector<PolyMatrix> n;  // one per toral element
};

inline XFPoint point_from_coordinates(const NormalFormData& nf, const std::vector<Rational>& coords) {
  const Setup& st = nf.setup;
  const std::size_t nw = st.ad.wtype.size(), nt = st.ad.toral.size(), off = nf.w1.basis.size();
  if (coords.size() != off + nf.w2.basis.size())
    throw NormalFormError("coordinate vector has the wrong length");
  XFPoint p;
  p.b.assign(nw, PolyMatrix(st.m(), st.m(), st.weights()));
  p.n.assign(nt, PolyMatrix(st.m(), st.m(), st.weights()));
  for (std::size_t t = 0; t < off; ++t)
    if (!coords[t].is_zero())
      for (std::size_t j = 0; j < nw; ++j) p.b[j] += nf.w1.basis[t].value[j] * coords[t];
  for (std::size_t t = 0; t < nf.w2.basis.size(); ++t)
    if (!coords[off + t].is_zero())
      for (std::size_t a = 0; a < nt; ++a) p.n[a] += nf.w2.basis[t].value[a] * coords[off + t];
  return p;
}

// Coordinates of a point, or nothing if it lies outside U_F x W2^k.
inline std::optional<std::vector<Rational>> decompose(const NormalFormData& nf, const XFPoint& p) {
  const Setup& st = nf.setup;
  const std::size_t nw = st.ad.wtype.size(), nt = st.ad.toral.size(), m = st.m();
  if (p.b.size() != nw || p.n.size() != nt)
    throw NormalFormError("point needs " + std::to_string(nw) + " B matrices and " + std::to_string(nt) +
                          " N matrices");
  for (const auto* v : {&p.b, &p.n})
    for (const auto& x : *v)
      if (x.rows() != m || x.cols() != m || x.weights() != st.weights())
        throw NormalFormError("point matrix has the wrong shape or weights");

  // Key: (family, slot, row, col, monomial)
  using Key = std::tuple<int, std::size_t, std::size_t, std::size_t, Monomial>;
  std::map<Key, std::size_t> rows;
  auto row_of = [&](const Key& k) { return rows.try_emplace(k, rows.size()).first->second; };
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols;
  auto add_column = [&](int fam, const std::vector<PolyMatrix>& v) {
    std::vector<std::pair<std::size_t, Rational>> col;
    for (std::size_t s = 0; s < v.size(); ++s)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
          for (const auto& [mo, coef] : v[s](r, c).terms()) col.push_back({row_of({fam, s, r, c, mo}), coef});
    cols.push_back(std::move(col));
  };
  for (const auto& e : nf.w1.basis) add_column(0, e.value);
  for (const auto& e : nf.w2.basis) add_column(1, e.value);
  std::vector<std::pair<std::size_t, Rational>> target;
  for (int fam = 0; fam < 2; ++fam) {
    const auto& v = fam == 0 ? p.b : p.n;
    for (std::size_t s = 0; s < v.size(); ++s)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
          for (const auto& [mo, coef] : v[s](r, c).terms()) target.push_back({row_of({fam, s, r, c, mo}), coef});
  }
  RationalMatrix a(rows.size(), cols.size());
  exact::RationalVector rhs(rows.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [r, v] : cols[j]) a(r, j) += v;
  for (const auto& [r, v] : target) rhs[r] += v;
  if (cols.empty()) {
    for (const auto& v : rhs)
      if (!v.is_zero()) return std::nullopt;
    return std::vector<Rational>{};
  }
  auto rr = exact::rref(a, rhs);
  if (!rr.consistent) return std::nullopt;
  return *rr.solution;
}

namespace detail {

inline LogConnection assemble(const NormalFormData& nf, const XFPoint& p) {
  const Setup& st = nf.setup;
  const auto& ad = st.ad;
  LogConnection c;
  c.omega.assign(st.divisor.n(), PolyMatrix(st.m(), st.m(), st.weights()));
  for (std::size_t a = 0; a < ad.toral.size(); ++a) c.omega[ad.toral[a]] = st.s_poly(a) + p.n[a];
  for (std::size_t i = 0; i < ad.semisimple.size(); ++i) c.omega[ad.semisimple[i]] = st.chi_poly(i);
  for (std::size_t j = 0; j < ad.wtype.size(); ++j) {
    PolyMatrix x = p.b[j];
    for (std::size_t a = 0; a < ad.toral.size(); ++a) {
      const auto& dpi = st.dpi.value[a][ad.wtype[j]];
      if (!dpi.is_zero()) x += dpi * p.n[a];
    }
    c.omega[ad.wtype[j]] = std::move(x);
  }
  return c;
}

}  // namespace detail

// omega(e_a) = S_a + N_a, omega(f_i) = chi_i, omega(w_j) = B_j + sum_a dpi_a(w_j) N_a.
inline LogConnection assemble_connection(const NormalFormData& nf, const XFPoint& p) {
  if (!decompose(nf, p)) throw NormalFormError("point does not lie in U_F x W2^k");
  return detail::assemble(nf, p);
}

struct TaggedResidual {
  std::string tag;
  std::vector<std::size_t> indices;
  PolyMatrix value;
};

// The X_F residual matrices at a point, computed straight from B and N.
inline std::vector<TaggedResidual> xf_residuals(const NormalFormData& nf, const XFPoint& p) {
  const Setup& st = nf.setup;
  const auto& ad = st.ad;
  const std::size_t m = st.m(), nw = ad.wtype.size(), nt = ad.toral.size();
  std::vector<TaggedResidual> out;
  for (std::size_t i = 0; i < nw; ++i)
    for (std::size_t j = i + 1; j < nw; ++j) {
      PolyMatrix r = reversed_bracket(p.b[i], p.b[j]) + st.w_field(i).apply(p.b[j]) - st.w_field(j).apply(p.b[i]);
      for (std::size_t k = 0; k < nw; ++k) r -= ad.gamma[i][j][k] * p.b[k];
      for (std::size_t a = 0; a < nt; ++a) r -= ad.alpha[i][j][a] * st.s_poly(a);
      for (std::size_t l = 0; l < ad.semisimple.size(); ++l) r -= ad.beta[i][j][l] * st.chi_poly(l);
      out.push_back({"curvature", {i, j}, std::move(r)});
    }
  for (std::size_t j = 0; j < nw; ++j)
    for (std::size_t a = 0; a < nt; ++a)
      out.push_back({"ZN", {j, a}, st.w_field(j).apply(p.n[a]) - reversed_bracket(p.n[a], p.b[j])});
  for (std::size_t a = 0; a < nt; ++a)
    for (std::size_t c = a + 1; c < nt; ++c) out.push_back({"NN", {a, c}, reversed_bracket(p.n[a], p.n[c])});
  for (std::size_t a = 0; a < nt; ++a) {
    PolyMatrix x = PolyMatrix::identity(m, st.weights());
    for (std::size_t e = 0; e < m; ++e) x = x * p.n[a];
    out.push_back({"nilpotency", {a}, std::move(x)});
  }
  return out;
}

struct XFCheck {
  bool in_space = false;         // B and N lie in U_F x W2^k
  std::vector<Rational> coordinates;
  bool flat = false;             // curvature of the assembled connection vanishes
  bool equations_hold = false;   // curvature, ZN and NN residuals vanish
  bool nilpotent = false;        // every N_a is nilpotent
  bool emitted_agrees = true;    // emitted polynomials match the residual matrices (in space only)
  std::vector<std::string> violated;

  bool in_xf() const { return in_space && flat && equations_hold && nilpotent; }
  // Inside the space, flatness and the tagged equations must give one verdict.
  bool consistent() const { return emitted_agrees && (!in_space || flat == equations_hold); }
};

inline XFCheck check_xf_point(const NormalFormData& nf, const PolySystem& sys, const XFPoint& p) {
  XFCheck out;
  auto coords = decompose(nf, p);
  out.in_space = coords.has_value();
  auto conn = detail::assemble(nf, p);
  out.flat = is_flat(nf.setup.divisor, nf.setup.sf, conn);

  auto residuals = xf_residuals(nf, p);
  out.equations_hold = true;
  out.nilpotent = true;
  for (const auto& r : residuals) {
    if (r.value.is_zero()) continue;
    if (r.tag == "nilpotency") out.nilpotent = false;
    else out.equations_hold = false;
  }

  if (!out.in_space) {
    out.violated.push_back("membership in U_F x W2^k");
    for (const auto& r : residuals) {
      if (r.value.is_zero()) continue;
      std::string l = r.tag + "(";
      for (std::size_t i = 0; i < r.indices.size(); ++i)
        l += (i ? "," : "") + (r.tag == "curvature" || (r.tag == "ZN" && i == 0)
                                   ? sys.slot_names.at(r.indices[i])
                                   : std::to_string(r.indices[i] + 1));
      out.violated.push_back(l + ")");
    }
    return out;
  }
  out.coordinates = *coords;

  // Each emitted equation must evaluate to its coefficient in the residual,
  // and each nonzero residual coefficient must have an equation.
  auto values = evaluate(sys, out.coordinates);
  using Key = std::tuple<std::string, std::vector<std::size_t>, std::size_t, std::size_t, Monomial>;
  std::map<Key, Rational> seen;
  for (std::size_t e = 0; e < sys.equations.size(); ++e) {
    const auto& eq = sys.equations[e];
    seen[{eq.tag, eq.indices, eq.row, eq.col, eq.base_monomial}] = values[e];
    if (!values[e].is_zero()) out.violated.push_back(equation_label(sys, eq));
  }
  std::map<std::pair<std::string, std::vector<std::size_t>>, const PolyMatrix*> by_tag;
  for (const auto& r : residuals) by_tag[{r.tag, r.indices}] = &r.value;
  for (const auto& r : residuals)
    for (std::size_t i = 0; i < sys.m; ++i)
      for (std::size_t j = 0; j < sys.m; ++j)
        for (const auto& [mo, coef] : r.value(i, j).terms()) {
          auto it = seen.find({r.tag, r.indices, i, j, mo});
          if (it == seen.end() || !(it->second == coef)) out.emitted_agrees = false;
        }
  for (std::size_t e = 0; e < sys.equations.size(); ++e) {
    const auto& eq = sys.equations[e];
    auto it = by_tag.find({eq.tag, eq.indices});
    if (it == by_tag.end() || !((*it->second)(eq.row, eq.col).coefficient(eq.base_monomial) == values[e]))
      out.emitted_agrees = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Restriction to an ansatz and linear propagation.

// An equation over named variables of weight 1.
struct NamedEquation {
  std::string label;
  WeightedPoly poly;
};

// Replaces each coordinate by a polynomial in new variables; coordinates not
// listed become 0. Equations that vanish identically are dropped.
inline std::vector<NamedEquation> substitute(const PolySystem& sys, const std::vector<std::string>& vars,
                                             const std::map<std::string, WeightedPoly>& values) {
  const Weights vw(vars.size(), 1);
  std::vector<WeightedPoly> img;
  for (const auto& c : sys.coordinates) {
    auto it = values.find(c.name);
    if (it != values.end() && it->second.weights() != vw)
      throw NormalFormError("substitution for " + c.name + " uses other variables");
    img.push_back(it == values.end() ? WeightedPoly(vw) : it->second);
  }
  for (const auto& [name, v] : values)
    if (!sys.coordinate_index(name)) throw NormalFormError("unknown coordinate " + name);
  std::vector<NamedEquation> out;
  for (const auto& e : sys.equations) {
    WeightedPoly acc(vw);
    for (const auto& [mo, coef] : e.poly.terms()) {
      WeightedPoly t = WeightedPoly::constant(vw, coef);
      for (std::size_t i = 0; i < mo.size() && !t.is_zero(); ++i)
        if (mo[i]) t = t * img[i].pow(static_cast<unsigned>(mo[i]));
      acc += t;
    }
    if (!acc.is_zero()) {
      NamedEquation ne{equation_label(sys, e), std::move(acc)};
      out.push_back(std::move(ne));
    }
  }
  return out;
}

struct PropagationStep {
  std::string variable;
  Rational value;
};

// Result of repeatedly solving the linear equations, substituting the
// determined variables and looking again.
struct LinearCertificate {
  bool inconsistent = false;
  std::vector<PropagationStep> steps;
  std::vector<WeightedPoly> final_linear;  // the linear equations at the failing stage
  exact::RationalVector y;                 // y^T A = 0, y^T b != 0
  Rational residual;                       // y^T b
};

inline LinearCertificate linear_propagation(const std::vector<NamedEquation>& eqs,
                                            const std::vector<std::string>& vars) {
  const std::size_t nv = vars.size();
  const Weights vw(nv, 1);
  LinearCertificate cert;
  std::vector<std::optional<Rational>> known(nv);
  for (;;) {
    std::vector<Rational> point(nv);
    std::vector<WeightedPoly> linear;
    for (const auto& e : eqs) {
      // Substitute known values.
      WeightedPoly p(vw);
      for (const auto& [mo, coef] : e.poly.terms()) {
        Monomial rest = mo;
        Rational c = coef;
        for (std::size_t i = 0; i < nv; ++i)
          if (known[i] && rest[i]) {
            for (int k = 0; k < rest[i]; ++k) c *= *known[i];
            rest[i] = 0;
          }
        p.add_term(rest, c);
      }
      if (!p.is_zero() && p.total_degree_max() <= 1) linear.push_back(std::move(p));
    }
    RationalMatrix a(linear.size(), nv);
    exact::RationalVector b(linear.size());
    for (std::size_t r = 0; r < linear.size(); ++r)
      for (const auto& [mo, coef] : linear[r].terms()) {
        auto it = std::find(mo.begin(), mo.end(), 1);
        if (it == mo.end()) b[r] -= coef;
        else a(r, static_cast<std::size_t>(it - mo.begin())) += coef;
      }
    if (linear.empty()) return cert;
    auto rr = exact::rref(a, b);
    if (!rr.consistent) {
      cert.inconsistent = true;
      cert.final_linear = linear;
      cert.y = *rr.certificate;
      for (std::size_t r = 0; r < linear.size(); ++r) cert.residual += cert.y[r] * b[r];
      return cert;
    }
    bool progress = false;
    for (std::size_t r = 0; r < rr.rank; ++r) {
      std::size_t pc = rr.pivots[r];
      bool alone = true;
      for (std::size_t c = 0; c < nv; ++c)
        if (c != pc && !rr.reduced(r, c).is_zero()) alone = false;
      if (!alone || known[pc]) continue;
      known[pc] = (*rr.solution)[pc];
      cert.steps.push_back({vars[pc], *known[pc]});
      progress = true;
    }
    if (!progress) return cert;
  }
}

// ---------------------------------------------------------------------------

struct MonodromySplit {
  RationalMatrix s, u, log_u;
};

// M = S U with S semisimple, U unipotent, [S, U] = 0, and N = log U.
inline MonodromySplit monodromy_split(const RationalMatrix& mono) {
  auto jc = liealg::jordan_chevalley(mono, liealg::JCMode::multiplicative);
  return {jc.s, jc.rest, liealg::log_unipotent(jc.rest)};
}

}  // namespace logres::normalform
