#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "logres/normalform/connection.hpp"

namespace logres::normalform {

using divisor::AlgebroidData;
using divisor::DpiTable;
using liealg::ResidueData;

// Everything the normal-form computations need about a divisor and a residue,
// validated once.
struct Setup {
  FreeDivisor divisor;
  StructureFunctions sf;
  AlgebroidData ad;
  DpiTable dpi;
  ResidueData residue;  // chi is always filled in

  std::size_t m() const { return residue.m(); }
  const Weights& weights() const { return divisor.weights; }
  PolyMatrix s_poly(std::size_t a) const { return PolyMatrix::constant(residue.s[a], weights()); }
  PolyMatrix chi_poly(std::size_t i) const { return PolyMatrix::constant((*residue.chi)[i], weights()); }
  const VectorField& toral_field(std::size_t a) const { return divisor.frame[ad.toral[a]].field; }
  const VectorField& ss_field(std::size_t i) const { return divisor.frame[ad.semisimple[i]].field; }
  const VectorField& w_field(std::size_t j) const { return divisor.frame[ad.wtype[j]].field; }
};

inline Setup make_setup(const FreeDivisor& d, ResidueData r) {
  auto saito = divisor::verify_saito(d);
  if (!saito.ok) throw NormalFormError("divisor " + d.name + " is not free: " + saito.message);
  auto sf = divisor::structure_functions(d);
  auto ad = divisor::algebroid_data(d, sf);
  if (r.k() != ad.toral.size())
    throw NormalFormError("residue has " + std::to_string(r.k()) + " S matrices but the divisor has " +
                          std::to_string(ad.toral.size()) + " toral elements");
  if (r.positive_combination != ad.euler)
    throw NormalFormError("residue positive_combination does not match the divisor's Euler combination");
  if (!r.chi) {
    r.chi = std::vector<RationalMatrix>(ad.semisimple.size(), RationalMatrix(r.m(), r.m()));
  }
  auto rep = liealg::validate_residue(r, ad.s);
  if (!rep.ok) throw NormalFormError("invalid residue: " + rep.message);
  auto dpi = divisor::compute_dpi(d);
  return Setup{d, std::move(sf), std::move(ad), std::move(dpi), std::move(r)};
}

// Origin of a basis vector: the free unknown it was normalised on.
struct Provenance {
  std::size_t slot = 0;
  int degree = 0;
  std::size_t row = 0, col = 0;
  Monomial monomial;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct BasisElement {
  int degree = 0;
  Provenance prov;
  std::vector<PolyMatrix> value;  // one matrix per slot
};

enum class Family { w1, w2, aut };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::w1: return "W1";
    case Family::w2: return "W2";
    case Family::aut: return "aut";
  }
  return "?";
}

struct SolutionSpace {
  Family family = Family::w1;
  std::size_t slots = 0;
  std::vector<int> candidate_degrees;
  std::vector<BasisElement> basis;

  std::size_t dim() const { return basis.size(); }
  std::map<int, std::size_t> dims() const {
    std::map<int, std::size_t> out;
    for (auto d : candidate_degrees) out[d];
    for (const auto& b : basis) ++out[b.degree];
    return out;
  }
  std::map<int, std::size_t> dims(std::size_t slot) const {
    std::map<int, std::size_t> out;
    for (auto d : candidate_degrees) out[d];
    for (const auto& b : basis)
      if (b.prov.slot == slot) ++out[b.degree];
    return out;
  }
};

namespace detail {

using Residual = std::function<std::vector<PolyMatrix>(const std::vector<PolyMatrix>&)>;

// Kernel of a linear operator on tuples of matrices whose entries are
// E-homogeneous of one degree. Columns are images of unit unknowns.
inline std::vector<BasisElement> solve_linear(const Weights& w, std::size_t m, std::size_t slots,
                                              const std::vector<bool>& active, int degree,
                                              const Residual& residual) {
  auto monos = exact::monomials_of_degree(w, degree);
  struct Unknown {
    std::size_t slot, row, col;
    const Monomial* mono;
  };
  std::vector<Unknown> unknowns;
  for (std::size_t s = 0; s < slots; ++s) {
    if (!active[s]) continue;
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c)
        for (const auto& mo : monos) unknowns.push_back({s, r, c, &mo});
  }
  if (unknowns.empty()) return {};

  using Key = std::tuple<std::size_t, std::size_t, std::size_t, Monomial>;
  std::map<Key, std::size_t> rows;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(unknowns.size());
  const std::vector<PolyMatrix> zero(slots, PolyMatrix(m, m, w));
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    auto x = zero;
    const auto& un = unknowns[u];
    x[un.slot](un.row, un.col) = WeightedPoly::term(w, *un.mono, 1);
    auto res = residual(x);
    for (std::size_t e = 0; e < res.size(); ++e)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
          for (const auto& [mo, coef] : res[e](r, c).terms()) {
            auto it = rows.try_emplace(Key{e, r, c, mo}, rows.size()).first;
            cols[u].push_back({it->second, coef});
          }
  }
  RationalMatrix a(rows.size(), unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    for (const auto& [r, v] : cols[u]) a(r, u) += v;

  auto rr = exact::rref(a);
  std::vector<bool> is_pivot(unknowns.size(), false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    if (!is_pivot[u]) free_cols.push_back(u);

  std::vector<BasisElement> out;
  for (std::size_t t = 0; t < rr.kernel.size(); ++t) {
    const auto& v = rr.kernel[t];
    const auto& fu = unknowns[free_cols[t]];
    BasisElement b;
    b.degree = degree;
    b.prov = {fu.slot, degree, fu.row, fu.col, *fu.mono};
    b.value = zero;
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      if (v[u].is_zero()) continue;
      const auto& un = unknowns[u];
      b.value[un.slot](un.row, un.col).add_term(*un.mono, v[u]);
    }
    out.push_back(std::move(b));
  }
  return out;
}

// E_a(X_j) = n_aj X_j + [S_a, X_j]_c and Y_i(X_j) = sum_k lambda_ij^k X_k + [chi_i, X_j]_c.
inline Residual w1_residual(const Setup& st) {
  return [&st](const std::vector<PolyMatrix>& x) {
    std::vector<PolyMatrix> out;
    const auto& ad = st.ad;
    for (std::size_t a = 0; a < ad.toral.size(); ++a) {
      auto s = st.s_poly(a);
      for (std::size_t j = 0; j < x.size(); ++j)
        out.push_back(st.toral_field(a).apply(x[j]) - x[j] * ad.n[a][j] - commutator(s, x[j]));
    }
    for (std::size_t i = 0; i < ad.semisimple.size(); ++i) {
      auto chi = st.chi_poly(i);
      for (std::size_t j = 0; j < x.size(); ++j) {
        PolyMatrix r = st.ss_field(i).apply(x[j]) - commutator(chi, x[j]);
        for (std::size_t k = 0; k < x.size(); ++k)
          if (!ad.lambda[i][j][k].is_zero()) r -= x[k] * ad.lambda[i][j][k];
        out.push_back(std::move(r));
      }
    }
    return out;
  };
}

// E_b(X) = [S_b, X]_c and Y_i(X) = [chi_i, X]_c.
inline Residual w2_residual(const Setup& st) {
  return [&st](const std::vector<PolyMatrix>& x) {
    std::vector<PolyMatrix> out;
    for (std::size_t b = 0; b < st.ad.toral.size(); ++b)
      out.push_back(st.toral_field(b).apply(x[0]) - commutator(st.s_poly(b), x[0]));
    for (std::size_t i = 0; i < st.ad.semisimple.size(); ++i)
      out.push_back(st.ss_field(i).apply(x[0]) - commutator(st.chi_poly(i), x[0]));
    return out;
  };
}

inline std::vector<long> ad_d_eigenvalues(const Setup& st) {
  return exact::integer_eigenvalues(liealg::ad_operator(st.residue.d()));
}

inline SolutionSpace single_slot_space(const Setup& st, Family fam) {
  SolutionSpace sp;
  sp.family = fam;
  sp.slots = 1;
  for (auto l : ad_d_eigenvalues(st))
    if (l >= 0 && !exact::monomials_of_degree(st.weights(), static_cast<int>(l)).empty())
      sp.candidate_degrees.push_back(static_cast<int>(l));
  for (auto d : sp.candidate_degrees) {
    auto b = solve_linear(st.weights(), st.m(), 1, {true}, d, w2_residual(st));
    sp.basis.insert(sp.basis.end(), b.begin(), b.end());
  }
  return sp;
}

}  // namespace detail

// Solutions of the W1 equations in every slot jointly: the slots are coupled
// through lambda, and [E, W] shows coupled slots share a grade.
inline SolutionSpace solve_w1(const Setup& st) {
  SolutionSpace sp;
  sp.family = Family::w1;
  sp.slots = st.ad.wtype.size();
  auto eig = detail::ad_d_eigenvalues(st);
  std::set<int> degrees;
  for (auto l : eig)
    for (auto g : st.ad.grades) {
      long d = l + g;
      if (d >= 0 && !exact::monomials_of_degree(st.weights(), static_cast<int>(d)).empty())
        degrees.insert(static_cast<int>(d));
    }
  sp.candidate_degrees.assign(degrees.begin(), degrees.end());
  for (auto d : sp.candidate_degrees) {
    std::vector<bool> active(sp.slots, false);
    for (std::size_t j = 0; j < sp.slots; ++j)
      active[j] = std::find(eig.begin(), eig.end(), d - st.ad.grades[j]) != eig.end();
    auto b = detail::solve_linear(st.weights(), st.m(), sp.slots, active, d, detail::w1_residual(st));
    sp.basis.insert(sp.basis.end(), b.begin(), b.end());
  }
  return sp;
}

// k copies of the single-slot space, one per toral element.
inline SolutionSpace solve_w2(const Setup& st) {
  auto one = detail::single_slot_space(st, Family::w2);
  SolutionSpace sp;
  sp.family = Family::w2;
  sp.slots = st.ad.toral.size();
  sp.candidate_degrees = one.candidate_degrees;
  for (std::size_t a = 0; a < sp.slots; ++a)
    for (const auto& b : one.basis) {
      BasisElement e = b;
      e.prov.slot = a;
      e.value.assign(sp.slots, PolyMatrix(st.m(), st.m(), st.weights()));
      e.value[a] = b.value[0];
      sp.basis.push_back(std::move(e));
    }
  return sp;
}

// Infinitesimal symmetries h with E_b(h) = [S_b, h] and Y_i(h) = [chi_i, h].
inline SolutionSpace symmetry_algebra(const Setup& st) { return detail::single_slot_space(st, Family::aut); }

// Brute-force solve at one degree with every slot admitted, whatever the
// eigenvalues of ad D say.
inline std::vector<BasisElement> solve_at_degree(const Setup& st, Family fam, int degree) {
  if (fam == Family::w1) {
    const std::size_t slots = st.ad.wtype.size();
    return detail::solve_linear(st.weights(), st.m(), slots, std::vector<bool>(slots, true), degree,
                                detail::w1_residual(st));
  }
  return detail::solve_linear(st.weights(), st.m(), 1, {true}, degree, detail::w2_residual(st));
}

}  // namespace logres::normalform
