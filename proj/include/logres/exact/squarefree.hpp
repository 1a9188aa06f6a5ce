#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "logres/exact/poly.hpp"
#include "logres/exact/univariate.hpp"

namespace logres::exact {

enum class SquarefreeVerdict { probably_squarefree, not_squarefree, inconclusive };

inline std::string to_string(SquarefreeVerdict v) {
  switch (v) {
    case SquarefreeVerdict::probably_squarefree: return "probably-squarefree";
    case SquarefreeVerdict::not_squarefree: return "not-squarefree";
    case SquarefreeVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

// f(a + t b) as a polynomial in t.
inline UniPoly restrict_to_line(const WeightedPoly& f, const std::vector<Rational>& a,
                                const std::vector<Rational>& b) {
  std::vector<UniPoly> lin;
  for (std::size_t i = 0; i < a.size(); ++i) lin.push_back(UniPoly({a[i], b[i]}));
  UniPoly out;
  for (const auto& [m, c] : f.terms()) {
    UniPoly t = UniPoly::constant(c);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int k = 0; k < m[i]; ++k) t = t * lin[i];
    out += t;
  }
  return out;
}

// Monte Carlo reducedness test. A line is usable when the restriction keeps
// the full total degree; a squarefree restriction on any usable line proves
// the top-degree behaviour is reduced there, while repeated factors on every
// usable line are taken as evidence of a multiple component.
inline SquarefreeVerdict squarefree_probable(const WeightedPoly& f, int trials = 8,
                                             std::uint64_t seed = 0) {
  if (f.is_zero()) throw Error("squarefree test of the zero polynomial");
  const int deg = f.total_degree_max();
  if (deg <= 1) return SquarefreeVerdict::probably_squarefree;
  std::mt19937_64 rng(seed);
  auto draw = [&rng]() { return Rational(static_cast<long>(rng() % 41) - 20); };
  int usable = 0, nontrivial = 0;
  for (int attempt = 0; attempt < 4 * trials && usable < trials; ++attempt) {
    std::vector<Rational> a(f.nvars()), b(f.nvars());
    for (auto& x : a) x = draw();
    for (auto& x : b) x = draw();
    UniPoly g = restrict_to_line(f, a, b);
    if (g.degree() != deg) continue;
    ++usable;
    if (gcd(g, g.derivative()).degree() > 0) ++nontrivial;
    else return SquarefreeVerdict::probably_squarefree;
  }
  if (usable == 0) return SquarefreeVerdict::inconclusive;
  return nontrivial == usable ? SquarefreeVerdict::not_squarefree
                              : SquarefreeVerdict::probably_squarefree;
}

}  // namespace logres::exact
