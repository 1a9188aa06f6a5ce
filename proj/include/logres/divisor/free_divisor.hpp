#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logres/divisor/vector_field.hpp"
#include "logres/exact/linalg.hpp"
#include "logres/exact/squarefree.hpp"

namespace logres::divisor {

using exact::RationalMatrix;

struct DivisorError : Error {
  using Error::Error;
};

enum class FrameKind { toral, semisimple, w };

inline std::string to_string(FrameKind k) {
  switch (k) {
    case FrameKind::toral: return "toral";
    case FrameKind::semisimple: return "semisimple";
    case FrameKind::w: return "w";
  }
  return "w";
}

struct FrameElement {
  std::string name;
  FrameKind kind = FrameKind::w;
  int grade = 0;  // m_j for w-type elements
  bool distinguished = false;
  VectorField field;

  friend bool operator==(const FrameElement&, const FrameElement&) = default;
};

struct FreeDivisor {
  std::string name;
  std::vector<std::string> variables;
  Weights weights;
  WeightedPoly f;
  int degree = 0;
  std::vector<FrameElement> frame;
  // Integer combination of the toral elements giving the Euler field; empty
  // means the single distinguished toral element.
  std::vector<int> euler;
  // Defining factors used for the projection pi; empty means {f}.
  std::vector<WeightedPoly> factors;
  // Optional coefficients P with pi_a = sum_r P(a, r) log factors[r].
  std::optional<RationalMatrix> factor_matrix;

  friend bool operator==(const FreeDivisor&, const FreeDivisor&) = default;

  std::size_t n() const { return variables.size(); }

  std::vector<std::size_t> indices(FrameKind k) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < frame.size(); ++i)
      if (frame[i].kind == k) out.push_back(i);
    return out;
  }

  // Rows are frame elements, columns are coordinate directions.
  PolyMatrix frame_matrix() const {
    PolyMatrix a(frame.size(), n(), weights);
    for (std::size_t i = 0; i < frame.size(); ++i)
      for (std::size_t j = 0; j < n(); ++j) a(i, j) = frame[i].field[j];
    return a;
  }

  std::vector<WeightedPoly> defining_factors() const {
    return factors.empty() ? std::vector<WeightedPoly>{f} : factors;
  }

  std::vector<int> euler_combination() const {
    auto tor = indices(FrameKind::toral);
    if (!euler.empty()) return euler;
    std::vector<int> comb(tor.size(), 0);
    int marked = 0;
    for (std::size_t a = 0; a < tor.size(); ++a)
      if (frame[tor[a]].distinguished) {
        comb[a] = 1;
        ++marked;
      }
    if (marked != 1)
      throw DivisorError("exactly one toral element must be distinguished when no euler "
                         "combination is given");
    return comb;
  }
};

// Structural checks that do not need the determinant.
inline void check_shape(const FreeDivisor& d) {
  const std::size_t n = d.n();
  if (n == 0) throw DivisorError("divisor has no variables");
  if (d.weights.size() != n) throw DivisorError("weights and variables differ in length");
  if (d.f.weights() != d.weights) throw DivisorError("f does not use the divisor weights");
  if (d.f.is_zero()) throw DivisorError("f is zero");
  if (!d.f.is_homogeneous_of(d.degree))
    throw DivisorError("f is not weighted homogeneous of degree " + std::to_string(d.degree));
  if (d.frame.size() != n)
    throw DivisorError("frame has " + std::to_string(d.frame.size()) + " elements, expected " +
                       std::to_string(n));
  for (const auto& e : d.frame) {
    if (e.field.dim() != n) throw DivisorError("frame element " + e.name + " has wrong length");
    if (e.field.weights() != d.weights)
      throw DivisorError("frame element " + e.name + " does not use the divisor weights");
  }
  auto tor = d.indices(FrameKind::toral);
  if (tor.empty()) throw DivisorError("frame has no toral element");
  auto comb = d.euler_combination();
  if (comb.size() != tor.size())
    throw DivisorError("euler combination length does not match the toral count");
  VectorField e = VectorField::zero(d.weights);
  for (std::size_t a = 0; a < tor.size(); ++a) e += Rational(comb[a]) * d.frame[tor[a]].field;
  if (!(e == VectorField::euler(d.weights)))
    throw DivisorError("euler combination of toral elements is not the weighted Euler field");
  if (!(e.apply(d.f) == d.f * Rational(d.degree)))
    throw DivisorError("E(f) differs from degree * f");
  if (!d.factors.empty()) {
    WeightedPoly prod = WeightedPoly::constant(d.weights, 1);
    for (const auto& g : d.factors) prod *= g;
    auto q = exact::try_divide(prod, d.f);
    if (!q || !q->is_constant() || q->is_zero())
      throw DivisorError("product of the defining factors is not a constant multiple of f");
  }
}

struct SaitoReport {
  bool ok = false;
  Rational constant;  // det = constant * f
  WeightedPoly det;
  exact::SquarefreeVerdict squarefree = exact::SquarefreeVerdict::inconclusive;
  std::string message;
};

inline SaitoReport verify_saito(const FreeDivisor& d, int trials = 8, std::uint64_t seed = 0) {
  check_shape(d);
  SaitoReport r;
  r.det = exact::determinant(d.frame_matrix());
  auto q = exact::try_divide(r.det, d.f);
  if (!q || !q->is_constant() || q->is_zero()) {
    r.message = "determinant " + r.det.to_string(d.variables) + " is not a nonzero constant times f";
    return r;
  }
  r.constant = q->constant_term();
  r.squarefree = exact::squarefree_probable(d.f, trials, seed);
  if (r.squarefree == exact::SquarefreeVerdict::not_squarefree) {
    r.message = "f shows repeated factors on every sampled line";
    return r;
  }
  r.ok = true;
  r.message = "ok";
  return r;
}

// [V_i, V_j] = sum_k c(i, j, k) V_k.
class StructureFunctions {
 public:
  StructureFunctions(std::size_t n, const Weights& w) : n_(n), c_(n * n * n, WeightedPoly(w)) {}
  std::size_t size() const { return n_; }
  WeightedPoly& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return c_[(i * n_ + j) * n_ + k];
  }
  const WeightedPoly& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * n_ + j) * n_ + k];
  }

 private:
  std::size_t n_;
  std::vector<WeightedPoly> c_;
};

inline StructureFunctions structure_functions(const FreeDivisor& d) {
  const std::size_t n = d.n();
  PolyMatrix a = d.frame_matrix();
  WeightedPoly det = exact::determinant(a);
  if (det.is_zero()) throw DivisorError("frame matrix is degenerate");
  PolyMatrix adj = exact::adjugate(a);
  StructureFunctions sf(n, d.weights);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      VectorField b = bracket(d.frame[i].field, d.frame[j].field);
      for (std::size_t k = 0; k < n; ++k) {
        WeightedPoly num(d.weights);
        for (std::size_t l = 0; l < n; ++l)
          if (!b[l].is_zero() && !adj(l, k).is_zero()) num += b[l] * adj(l, k);
        auto q = exact::try_divide(num, det);
        if (!q)
          throw DivisorError("frame is not closed under bracket: [" + d.frame[i].name + ", " +
                             d.frame[j].name + "] has a non-polynomial coefficient");
        sf(i, j, k) = *q;
        sf(j, i, k) = -*q;
      }
    }
  return sf;
}

// Constants and polynomial blocks of the bracket in adapted form:
// [e_a, w_j] = n_aj w_j, [f_i, f_j] = s_ij^k f_k, [f_i, w_j] = lambda_ij^k w_k,
// [w_i, w_j] = alpha e + beta f + gamma w.
struct AlgebroidData {
  std::vector<std::size_t> toral, semisimple, wtype;  // frame positions
  std::vector<int> euler;
  std::vector<int> grades;
  std::vector<std::vector<Rational>> n;                     // [a][j]
  std::vector<std::vector<std::vector<Rational>>> s;       // [i][j][k]
  std::vector<std::vector<std::vector<Rational>>> lambda;  // [i][j][k]
  std::vector<std::vector<std::vector<WeightedPoly>>> alpha, beta, gamma;
};

inline AlgebroidData algebroid_data(const FreeDivisor& d, const StructureFunctions& sf) {
  AlgebroidData ad;
  ad.toral = d.indices(FrameKind::toral);
  ad.semisimple = d.indices(FrameKind::semisimple);
  ad.wtype = d.indices(FrameKind::w);
  ad.euler = d.euler_combination();
  for (auto j : ad.wtype) ad.grades.push_back(d.frame[j].grade);

  const std::size_t n = d.n();
  auto name = [&](std::size_t i) { return d.frame[i].name; };
  auto constant_of = [&](std::size_t i, std::size_t j, std::size_t k) {
    const auto& p = sf(i, j, k);
    if (!p.is_constant())
      throw DivisorError("frame is not adapted: [" + name(i) + ", " + name(j) +
                         "] has a non-constant coefficient on " + name(k));
    return p.constant_term();
  };
  auto require_zero = [&](std::size_t i, std::size_t j, std::size_t k) {
    if (!sf(i, j, k).is_zero())
      throw DivisorError("frame is not adapted: [" + name(i) + ", " + name(j) +
                         "] has a component along " + name(k));
  };

  for (auto a : ad.toral)
    for (std::size_t b = 0; b < n; ++b) {
      if (d.frame[b].kind == FrameKind::w) continue;
      for (std::size_t k = 0; k < n; ++k) require_zero(a, b, k);
    }

  ad.n.assign(ad.toral.size(), std::vector<Rational>(ad.wtype.size()));
  for (std::size_t a = 0; a < ad.toral.size(); ++a)
    for (std::size_t j = 0; j < ad.wtype.size(); ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == ad.wtype[j]) ad.n[a][j] = constant_of(ad.toral[a], ad.wtype[j], k);
        else require_zero(ad.toral[a], ad.wtype[j], k);
      }
  for (std::size_t j = 0; j < ad.wtype.size(); ++j) {
    Rational m;
    for (std::size_t a = 0; a < ad.toral.size(); ++a) m += Rational(ad.euler[a]) * ad.n[a][j];
    if (!(m == Rational(ad.grades[j])))
      throw DivisorError("grade of " + name(ad.wtype[j]) + " is declared " +
                         std::to_string(ad.grades[j]) + " but [E, " + name(ad.wtype[j]) +
                         "] gives " + m.str());
  }

  const std::size_t ns = ad.semisimple.size(), nw = ad.wtype.size(), nt = ad.toral.size();
  ad.s.assign(ns, std::vector<std::vector<Rational>>(ns, std::vector<Rational>(ns)));
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < ns; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (d.frame[k].kind == FrameKind::semisimple) {
          auto pos = static_cast<std::size_t>(
              std::find(ad.semisimple.begin(), ad.semisimple.end(), k) - ad.semisimple.begin());
          ad.s[i][j][pos] = constant_of(ad.semisimple[i], ad.semisimple[j], k);
        } else {
          require_zero(ad.semisimple[i], ad.semisimple[j], k);
        }
      }

  ad.lambda.assign(ns, std::vector<std::vector<Rational>>(nw, std::vector<Rational>(nw)));
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nw; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (d.frame[k].kind == FrameKind::w) {
          auto pos = static_cast<std::size_t>(
              std::find(ad.wtype.begin(), ad.wtype.end(), k) - ad.wtype.begin());
          ad.lambda[i][j][pos] = constant_of(ad.semisimple[i], ad.wtype[j], k);
        } else {
          require_zero(ad.semisimple[i], ad.wtype[j], k);
        }
      }

  auto block = [&](std::size_t len) {
    return std::vector<std::vector<std::vector<WeightedPoly>>>(
        nw, std::vector<std::vector<WeightedPoly>>(nw, std::vector<WeightedPoly>(len, WeightedPoly(d.weights))));
  };
  ad.alpha = block(nt);
  ad.beta = block(ns);
  ad.gamma = block(nw);
  for (std::size_t i = 0; i < nw; ++i)
    for (std::size_t j = 0; j < nw; ++j) {
      for (std::size_t a = 0; a < nt; ++a) ad.alpha[i][j][a] = sf(ad.wtype[i], ad.wtype[j], ad.toral[a]);
      for (std::size_t l = 0; l < ns; ++l)
        ad.beta[i][j][l] = sf(ad.wtype[i], ad.wtype[j], ad.semisimple[l]);
      for (std::size_t k = 0; k < nw; ++k) ad.gamma[i][j][k] = sf(ad.wtype[i], ad.wtype[j], ad.wtype[k]);
    }
  return ad;
}

// Row i is the logarithmic 1-form dual to frame element i:
// xi^i = sum_j numer(i, j) / (c f) dz_j, so that numer * A^T = c f I.
struct LogFormFrame {
  PolyMatrix numer;
  Rational c;
  WeightedPoly f;
};

inline LogFormFrame dual_log_forms(const FreeDivisor& d) {
  auto rep = verify_saito(d);
  if (!rep.ok) throw DivisorError("Saito's criterion fails: " + rep.message);
  PolyMatrix a = d.frame_matrix();
  LogFormFrame out{exact::adjugate(a).transpose(), rep.constant, d.f};
  WeightedPoly cf = d.f * rep.constant;
  if (!(out.numer * a.transpose() == cf * PolyMatrix::identity(d.n(), d.weights)))
    throw DivisorError("dual form pairing identity fails");
  return out;
}

// Coefficients of dlog f in the dual frame: V_i(f) / f.
inline std::vector<WeightedPoly> dlog_f_expansion(const FreeDivisor& d) {
  std::vector<WeightedPoly> out;
  for (const auto& e : d.frame) {
    auto q = exact::try_divide(e.field.apply(d.f), d.f);
    if (!q) throw DivisorError("frame element " + e.name + " is not logarithmic along f");
    out.push_back(*q);
  }
  return out;
}

struct FormTerm {
  std::size_t i, j;    // xi^i ^ xi^j with i < j
  WeightedPoly coeff;  // = -c_ij^k
};

// d xi^k = - sum_{i<j} c_ij^k xi^i ^ xi^j.
inline std::vector<std::vector<FormTerm>> form_structure_equations(const StructureFunctions& sf) {
  const std::size_t n = sf.size();
  std::vector<std::vector<FormTerm>> out(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!sf(i, j, k).is_zero()) out[k].push_back({i, j, -sf(i, j, k)});
  return out;
}

// dpi_a evaluated on every frame element, where pi_a = sum_r P(a, r) log g_r.
struct DpiTable {
  RationalMatrix p;                             // toral x factors
  std::vector<std::vector<WeightedPoly>> value;  // [a][frame index]
};

inline DpiTable compute_dpi(const FreeDivisor& d) {
  auto factors = d.defining_factors();
  auto tor = d.indices(FrameKind::toral);
  auto ss = d.indices(FrameKind::semisimple);
  const std::size_t nr = factors.size(), nt = tor.size();

  // q[r][i] = V_i(g_r) / g_r
  std::vector<std::vector<WeightedPoly>> q(nr);
  for (std::size_t r = 0; r < nr; ++r)
    for (const auto& e : d.frame) {
      auto x = exact::try_divide(e.field.apply(factors[r]), factors[r]);
      if (!x) throw DivisorError("frame element " + e.name + " is not tangent to factor " +
                                 factors[r].to_string(d.variables));
      q[r].push_back(*x);
    }

  // Conditions: dpi_a(e_b) = delta_ab, dpi_a(f_i) = 0.
  std::vector<std::size_t> pinned = tor;
  pinned.insert(pinned.end(), ss.begin(), ss.end());
  RationalMatrix m(pinned.size(), nr);
  for (std::size_t c = 0; c < pinned.size(); ++c)
    for (std::size_t r = 0; r < nr; ++r) {
      if (!q[r][pinned[c]].is_constant())
        throw DivisorError("factor " + factors[r].to_string(d.variables) +
                           " is not semi-invariant under " + d.frame[pinned[c]].name);
      m(c, r) = q[r][pinned[c]].constant_term();
    }

  DpiTable t;
  if (d.factor_matrix) {
    t.p = *d.factor_matrix;
    if (t.p.rows() != nt || t.p.cols() != nr)
      throw DivisorError("factor matrix must be toral-count x factor-count");
  } else {
    t.p = RationalMatrix(nt, nr);
    for (std::size_t a = 0; a < nt; ++a) {
      exact::RationalVector rhs(pinned.size());
      rhs[a] = 1;
      auto sol = exact::rref(m, rhs);
      if (!sol.consistent)
        throw DivisorError("no combination of factor logarithms projects onto toral direction " +
                           d.frame[tor[a]].name);
      for (std::size_t r = 0; r < nr; ++r) t.p(a, r) = (*sol.solution)[r];
    }
  }
  for (std::size_t a = 0; a < nt; ++a)
    for (std::size_t c = 0; c < pinned.size(); ++c) {
      Rational v;
      for (std::size_t r = 0; r < nr; ++r) v += t.p(a, r) * m(c, r);
      if (!(v == Rational(c == a ? 1 : 0)))
        throw DivisorError("factor matrix does not satisfy dpi(e_b) = delta, dpi(f) = 0");
    }

  t.value.assign(nt, std::vector<WeightedPoly>(d.n(), WeightedPoly(d.weights)));
  for (std::size_t a = 0; a < nt; ++a)
    for (std::size_t i = 0; i < d.n(); ++i)
      for (std::size_t r = 0; r < nr; ++r) t.value[a][i] += q[r][i] * t.p(a, r);
  return t;
}

}  // namespace logres::divisor
