#pragma once

// Independent test-side oracles. Nothing here calls into the elimination,
// characteristic-polynomial or eigenvalue code under test.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "logres/exact/matrix.hpp"
#include "logres/exact/univariate.hpp"

namespace oracle {

using logres::exact::Rational;
using logres::exact::RationalMatrix;
using logres::exact::UniPoly;
using logres::exact::Weights;
using logres::exact::WeightedPoly;

// det(tI - A) by the Leibniz permutation expansion.
inline UniPoly leibniz_charpoly(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  UniPoly total;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    UniPoly term = UniPoly::constant(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) {
      UniPoly entry = UniPoly::constant(-a(i, perm[i]));
      if (perm[i] == i) entry += UniPoly::x();
      term = term * entry;
      if (term.is_zero()) break;
    }
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Plain fraction Gaussian elimination returning the rank.
inline std::size_t naive_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

inline std::size_t naive_nullity(const RationalMatrix& m) {
  std::vector<std::vector<Rational>> rows(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return m.cols() - naive_rank(std::move(rows));
}

// Small random rationals with a bias towards zero so sparse cases appear.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  long integer(long lo, long hi) {
    return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rational rational() {
    if (integer(0, 3) == 0) return 0;
    return Rational(integer(-5, 5), integer(1, 3));
  }
  RationalMatrix matrix(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rational();
    return m;
  }
  // P J P^{-1} with J built from Jordan blocks sharing eigenvalues, so the
  // nilpotent part is usually nonzero. Every third draw is a plain random matrix.
  RationalMatrix jordan_like(std::size_t n) {
    if (integer(0, 2) == 0) return matrix(n);
    RationalMatrix j(n, n);
    Rational lambda = integer(-3, 3);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && integer(0, 2) == 0) lambda = integer(-3, 3);
      j(i, i) = lambda;
      if (i + 1 < n && integer(0, 1) == 0) j(i, i + 1) = 1;
    }
    // Unit upper times unit lower triangular: invertible, with the inverse
    // given by a terminating Neumann series for each factor.
    RationalMatrix u = RationalMatrix::identity(n), l = RationalMatrix::identity(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) {
        u(r, c) = integer(-2, 2);
        l(c, r) = integer(-2, 2);
      }
    return u * l * j * unit_inverse(l) * unit_inverse(u);
  }
  static RationalMatrix unit_inverse(const RationalMatrix& t) {
    const std::size_t n = t.rows();
    RationalMatrix x = RationalMatrix::identity(n) - t, acc = RationalMatrix::identity(n),
                   pw = RationalMatrix::identity(n);
    for (std::size_t k = 1; k < n; ++k) {
      pw = pw * x;
      acc += pw;
    }
    return acc;
  }
  WeightedPoly poly(const Weights& w, int max_exp, int terms) {
    WeightedPoly p(w);
    for (int t = 0; t < terms; ++t) {
      logres::exact::Monomial m(w.size());
      for (auto& e : m) e = static_cast<int>(integer(0, max_exp));
      p.add_term(m, rational());
    }
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
