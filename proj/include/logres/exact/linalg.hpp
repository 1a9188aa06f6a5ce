#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "logres/exact/matrix.hpp"
#include "logres/exact/univariate.hpp"

namespace logres::exact {

using RationalVector = std::vector<Rational>;

struct RrefResult {
  RationalMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
  bool consistent = true;
  std::optional<RationalVector> solution;     // particular solution, free variables zero
  std::optional<RationalVector> certificate;  // y with y^T M = 0 and y^T rhs != 0
  std::vector<RationalVector> kernel;
};

// Gauss-Jordan elimination. With a right-hand side the row operations are
// recorded so an inconsistent system yields a left-kernel certificate.
inline RrefResult rref(const RationalMatrix& m, const std::optional<RationalVector>& rhs = {}) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (rhs && rhs->size() != rows) throw Error("rhs length does not match row count");
  const bool track = rhs.has_value();
  const std::size_t width = cols + (track ? 1 + rows : 0);
  RationalMatrix a(rows, width);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = m(i, j);
    if (track) {
      a(i, cols) = (*rhs)[i];
      a(i, cols + 1 + i) = 1;
    }
  }

  RrefResult res;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < width; ++j) std::swap(a(p, j), a(r, j));
    Rational inv = Rational(1) / a(r, c);
    for (std::size_t j = c; j < width; ++j)
      if (!a(r, j).is_zero()) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < width; ++j)
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;

  res.reduced = RationalMatrix(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) res.reduced(i, j) = a(i, j);

  std::vector<bool> is_pivot(cols, false);
  for (auto c : res.pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < res.rank; ++i) v[res.pivots[i]] = -a(i, f);
    res.kernel.push_back(std::move(v));
  }

  if (track) {
    for (std::size_t i = res.rank; i < rows; ++i) {
      if (a(i, cols).is_zero()) continue;
      res.consistent = false;
      RationalVector y(rows);
      for (std::size_t k = 0; k < rows; ++k) y[k] = a(i, cols + 1 + k);
      res.certificate = std::move(y);
      break;
    }
    if (res.consistent) {
      RationalVector x(cols);
      for (std::size_t i = 0; i < res.rank; ++i) x[res.pivots[i]] = a(i, cols);
      res.solution = std::move(x);
    }
  }
  return res;
}

inline std::vector<RationalVector> kernel_basis(const RationalMatrix& m) { return rref(m).kernel; }

inline std::size_t rank(const RationalMatrix& m) { return rref(m).rank; }

inline RationalVector mat_vec(const RationalMatrix& m, const RationalVector& v) {
  if (v.size() != m.cols()) throw Error("matrix-vector shape mismatch");
  RationalVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] += m(i, j) * v[j];
  return out;
}

inline std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (!m.is_square()) throw Error("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto r = rref(aug);
  if (r.rank < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

inline constexpr std::size_t kMaxCharpolyDim = 400;

// det(tI - M) via reduction to upper Hessenberg form (Cohen, Algorithm 2.2.9).
inline UniPoly charpoly(const RationalMatrix& m) {
  if (!m.is_square()) throw Error("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  if (n > kMaxCharpolyDim)
    throw Error("characteristic polynomial limited to dimension " +
                std::to_string(kMaxCharpolyDim) + ", got " + std::to_string(n));
  RationalMatrix h = m;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::size_t i = k;
    while (i < n && h(i, k - 1).is_zero()) ++i;
    if (i == n) continue;
    if (i != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(i, j), h(k, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, k));
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      if (h(r, k - 1).is_zero()) continue;
      Rational u = h(r, k - 1) / h(k, k - 1);
      for (std::size_t j = 0; j < n; ++j)
        if (!h(k, j).is_zero()) h(r, j) -= u * h(k, j);
      for (std::size_t j = 0; j < n; ++j)
        if (!h(j, r).is_zero()) h(j, k) += u * h(j, r);
    }
  }
  std::vector<UniPoly> p(n + 1);
  p[0] = UniPoly::constant(1);
  for (std::size_t mm = 1; mm <= n; ++mm) {
    p[mm] = UniPoly::linear_root(h(mm - 1, mm - 1)) * p[mm - 1];
    Rational t = 1;
    for (std::size_t i = mm - 1; i >= 1; --i) {
      t *= h(i, i - 1);
      if (t.is_zero()) break;
      p[mm] -= p[i - 1] * (t * h(i - 1, mm - 1));
    }
  }
  return p[n];
}

// Integer roots of a nonzero polynomial, ascending.
inline std::vector<long> integer_roots(const UniPoly& p) {
  if (p.is_zero()) throw Error("integer roots of the zero polynomial");
  std::vector<long> roots;
  int low = 0;
  while (p.coeff(low).is_zero()) ++low;
  if (low > 0) roots.push_back(0);
  std::vector<Rational> c(p.coeffs().begin() + low, p.coeffs().end());
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg <= 0) return roots;

  // Fujiwara-type bound: |root| <= 2 max_i ceil(|c_{deg-i}/c_deg|^(1/i)).
  mpz_class bound = 1;
  for (int i = 1; i <= deg; ++i) {
    Rational q = (c[deg - i] / c[deg]).abs();
    if (q.is_zero()) continue;
    mpz_class num = q.numerator(), den = q.denominator();
    mpz_class ceil_q = (num + den - 1) / den;
    mpz_class r;
    mpz_root(r.get_mpz_t(), ceil_q.get_mpz_t(), static_cast<unsigned long>(i));
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(i));
    if (pw < ceil_q) r += 1;
    if (r > bound) bound = r;
  }
  bound *= 2;

  // Integer roots divide the trailing coefficient once coefficients are cleared.
  mpz_class den_lcm = 1;
  for (const auto& x : c) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.denominator().get_mpz_t());
  mpz_class a0 = (c[0] * Rational(den_lcm)).numerator();
  a0 = abs(a0);
  mpz_class limit = a0 < bound ? a0 : bound;
  if (!limit.fits_slong_p()) throw Error("integer root search range too large");
  UniPoly q(c);
  for (long d = 1; d <= limit.get_si(); ++d) {
    if (a0 % d != 0) continue;
    if (q.evaluate(Rational(d)).is_zero()) roots.push_back(d);
    if (q.evaluate(Rational(-d)).is_zero()) roots.push_back(-d);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

inline std::vector<long> integer_eigenvalues(const RationalMatrix& l) {
  if (!l.is_square()) throw Error("eigenvalues of non-square matrix");
  if (l.rows() == 0) return {};
  return integer_roots(charpoly(l));
}

// Evaluate a univariate polynomial at a square matrix (Horner).
inline RationalMatrix evaluate_at(const UniPoly& p, const RationalMatrix& a) {
  const std::size_t n = a.rows();
  RationalMatrix acc(n, n);
  for (int i = p.degree(); i >= 0; --i) acc = acc * a + RationalMatrix::identity(n) * p.coeff(i);
  return acc;
}

}  // namespace logres::exact
