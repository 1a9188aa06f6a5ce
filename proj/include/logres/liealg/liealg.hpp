#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logres/exact/linalg.hpp"

namespace logres::liealg {

using exact::Rational;
using exact::RationalMatrix;

// The library computes with the commutator AB - BA. The reversed convention is
// its negative, [X, Y]_p = -(XY - YX); every normal-form equation is written
// against that convention.
enum class BracketConvention { commutator, reversed };

inline RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) {
  return a * b - b * a;
}

inline RationalMatrix lie_bracket(const RationalMatrix& a, const RationalMatrix& b,
                                  BracketConvention c = BracketConvention::reversed) {
  return c == BracketConvention::commutator ? commutator(a, b) : commutator(b, a);
}

// Matrix of X -> AX - XA on matrix units E_pq, index p*m + q.
inline RationalMatrix ad_operator(const RationalMatrix& a) {
  if (!a.is_square()) throw Error("ad of a non-square matrix");
  const std::size_t m = a.rows();
  RationalMatrix out(m * m, m * m);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) {
          Rational v;
          if (q == s) v += a(r, p);
          if (r == p) v -= a(q, s);
          if (!v.is_zero()) out(r * m + s, p * m + q) = v;
        }
  return out;
}

inline RationalMatrix unflatten(const std::vector<Rational>& v, std::size_t m) {
  RationalMatrix x(m, m);
  for (std::size_t i = 0; i < m * m; ++i) x(i / m, i % m) = v[i];
  return x;
}

inline std::vector<Rational> flatten(const RationalMatrix& x) { return x.data(); }

// Basis of {X : [X, M] = 0 for all M}.
inline std::vector<RationalMatrix> centralizer_algebra(const std::vector<RationalMatrix>& mats,
                                                       std::size_t m) {
  RationalMatrix stacked(mats.size() * m * m, m * m);
  for (std::size_t t = 0; t < mats.size(); ++t) {
    if (mats[t].rows() != m || mats[t].cols() != m) throw Error("centralizer of mismatched sizes");
    auto ad = ad_operator(mats[t]);
    for (std::size_t i = 0; i < m * m; ++i)
      for (std::size_t j = 0; j < m * m; ++j) stacked(t * m * m + i, j) = ad(i, j);
  }
  std::vector<RationalMatrix> out;
  for (const auto& v : exact::kernel_basis(stacked)) out.push_back(unflatten(v, m));
  return out;
}

inline bool is_nilpotent(const RationalMatrix& a) {
  if (!a.is_square()) throw Error("nilpotency test of a non-square matrix");
  return a.pow(static_cast<unsigned>(a.rows())).is_zero();
}

inline bool is_unipotent(const RationalMatrix& a) {
  if (!a.is_square()) throw Error("unipotency test of a non-square matrix");
  return is_nilpotent(a - RationalMatrix::identity(a.rows()));
}

// Diagonalisable over the algebraic closure iff the squarefree part of the
// characteristic polynomial annihilates A.
inline bool is_semisimple(const RationalMatrix& a) {
  if (!a.is_square()) throw Error("semisimplicity test of a non-square matrix");
  if (a.rows() == 0) return true;
  return exact::evaluate_at(exact::squarefree_part(exact::charpoly(a)), a).is_zero();
}

enum class JCMode { additive, multiplicative };

struct JCDecomposition {
  RationalMatrix s;
  RationalMatrix rest;  // nilpotent N (additive) or unipotent U (multiplicative)
  JCMode mode = JCMode::additive;
};

namespace detail {

// Newton iteration S <- S - g(S) g'(S)^{-1} for the squarefree part g of the
// characteristic polynomial; converges in O(log m) steps to the semisimple part.
inline RationalMatrix semisimple_part(const RationalMatrix& a) {
  const std::size_t m = a.rows();
  if (m == 0) return a;
  auto g = exact::squarefree_part(exact::charpoly(a));
  auto dg = g.derivative();
  RationalMatrix s = a;
  for (int iter = 0; iter < 64; ++iter) {
    auto gs = exact::evaluate_at(g, s);
    if (gs.is_zero()) return s;
    auto inv = exact::inverse(exact::evaluate_at(dg, s));
    if (!inv) throw Error("Jordan-Chevalley iteration hit a singular derivative");
    s = s - gs * *inv;
  }
  throw Error("Jordan-Chevalley iteration did not converge");
}

}  // namespace detail

inline JCDecomposition jordan_chevalley(const RationalMatrix& a, JCMode mode = JCMode::additive) {
  if (!a.is_square()) throw Error("Jordan-Chevalley decomposition of a non-square matrix");
  JCDecomposition d;
  d.mode = mode;
  if (mode == JCMode::multiplicative) {
    auto ainv = exact::inverse(a);
    if (!ainv) throw Error("multiplicative Jordan-Chevalley decomposition needs an invertible matrix");
  }
  d.s = detail::semisimple_part(a);
  if (mode == JCMode::additive) {
    d.rest = a - d.s;
    if (!(d.s + d.rest == a) || !commutator(d.s, d.rest).is_zero() || !is_nilpotent(d.rest) ||
        !is_semisimple(d.s))
      throw Error("additive Jordan-Chevalley invariants failed");
  } else {
    auto sinv = exact::inverse(d.s);
    if (!sinv) throw Error("semisimple part is singular");
    d.rest = *sinv * a;
    if (!(d.s * d.rest == a) || !commutator(d.s, d.rest).is_zero() || !is_unipotent(d.rest) ||
        !is_semisimple(d.s))
      throw Error("multiplicative Jordan-Chevalley invariants failed");
  }
  return d;
}

// Terminating series; input must be nilpotent.
inline RationalMatrix exp_nilpotent(const RationalMatrix& n) {
  if (!is_nilpotent(n)) throw Error("exp_nilpotent needs a nilpotent matrix");
  const std::size_t m = n.rows();
  RationalMatrix out = RationalMatrix::identity(m), term = RationalMatrix::identity(m);
  for (std::size_t k = 1; k <= m; ++k) {
    term = term * n * Rational(1, static_cast<long>(k));
    out += term;
  }
  return out;
}

// log U = sum_{k>=1} (-1)^{k+1} (U - I)^k / k, terminating for unipotent U.
inline RationalMatrix log_unipotent(const RationalMatrix& u) {
  if (!is_unipotent(u)) throw Error("log_unipotent needs a unipotent matrix");
  const std::size_t m = u.rows();
  RationalMatrix x = u - RationalMatrix::identity(m);
  RationalMatrix out(m, m), power = RationalMatrix::identity(m);
  for (std::size_t k = 1; k <= m; ++k) {
    power = power * x;
    out += power * Rational(k % 2 ? 1 : -1, static_cast<long>(k));
  }
  return out;
}

struct ResidueData {
  std::vector<RationalMatrix> s;       // S_1..S_k
  std::vector<int> positive_combination;  // e = sum_a comb_a e_a
  std::optional<std::vector<RationalMatrix>> chi;

  friend bool operator==(const ResidueData&, const ResidueData&) = default;

  std::size_t k() const { return s.size(); }
  std::size_t m() const { return s.empty() ? 0 : s.front().rows(); }

  RationalMatrix d() const {
    RationalMatrix out(m(), m());
    for (std::size_t a = 0; a < s.size(); ++a) out += s[a] * Rational(positive_combination.at(a));
    return out;
  }
  std::vector<RationalMatrix> chi_or_empty() const { return chi ? *chi : std::vector<RationalMatrix>{}; }
};

struct ResidueReport {
  bool ok = true;
  std::string message = "ok";
};

// s_constants[i][j][k]: [f_i, f_j] = sum_k s_ij^k f_k for the semisimple basis.
inline ResidueReport validate_residue(
    const ResidueData& r,
    const std::optional<std::vector<std::vector<std::vector<Rational>>>>& s_constants = {},
    BracketConvention conv = BracketConvention::reversed) {
  auto fail = [](std::string m) { return ResidueReport{false, std::move(m)}; };
  if (r.s.empty()) return fail("residue has no S matrices");
  const std::size_t m = r.m();
  if (m == 0) return fail("residue matrices are empty");
  if (r.positive_combination.size() != r.s.size())
    return fail("positive_combination length differs from the number of S matrices");
  for (std::size_t a = 0; a < r.s.size(); ++a)
    if (r.s[a].rows() != m || r.s[a].cols() != m)
      return fail("S" + std::to_string(a + 1) + " has the wrong shape");
  for (std::size_t a = 0; a < r.s.size(); ++a)
    if (!is_semisimple(r.s[a])) return fail("S" + std::to_string(a + 1) + " is not semisimple");
  for (std::size_t a = 0; a < r.s.size(); ++a)
    for (std::size_t b = a + 1; b < r.s.size(); ++b)
      if (!commutator(r.s[a], r.s[b]).is_zero())
        return fail("S" + std::to_string(a + 1) + " and S" + std::to_string(b + 1) + " do not commute");
  auto chi = r.chi_or_empty();
  for (std::size_t i = 0; i < chi.size(); ++i) {
    if (chi[i].rows() != m || chi[i].cols() != m)
      return fail("chi" + std::to_string(i + 1) + " has the wrong shape");
    for (std::size_t a = 0; a < r.s.size(); ++a)
      if (!commutator(chi[i], r.s[a]).is_zero())
        return fail("chi" + std::to_string(i + 1) + " does not commute with S" + std::to_string(a + 1));
  }
  if (s_constants) {
    const auto& c = *s_constants;
    if (c.size() != chi.size())
      return fail("chi has " + std::to_string(chi.size()) + " images but the semisimple part has " +
                  std::to_string(c.size()) + " generators");
    for (std::size_t i = 0; i < chi.size(); ++i)
      for (std::size_t j = i + 1; j < chi.size(); ++j) {
        RationalMatrix rhs(m, m);
        for (std::size_t k = 0; k < chi.size(); ++k) rhs += chi[k] * c[i][j][k];
        if (!(lie_bracket(chi[i], chi[j], conv) == rhs))
          return fail("chi does not respect the bracket of generators " + std::to_string(i + 1) +
                      " and " + std::to_string(j + 1));
      }
  }
  return {};
}

}  // namespace logres::liealg
