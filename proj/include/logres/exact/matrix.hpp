#pragma once

#include <string>
#include <vector>

#include "logres/exact/poly.hpp"
#include "logres/exact/rational.hpp"

namespace logres::exact {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error("ragged matrix literal");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static RationalMatrix diagonal(const std::vector<Rational>& d) {
    RationalMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  // Matrix unit E_pq.
  static RationalMatrix unit(std::size_t n, std::size_t p, std::size_t q) {
    RationalMatrix m(n, n);
    m(p, q) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  const std::vector<Rational>& data() const { return a_; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }
  Rational trace() const {
    Rational t;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }
  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  RationalMatrix& operator+=(const RationalMatrix& o) {
    same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  RationalMatrix& operator-=(const RationalMatrix& o) {
    same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator*(RationalMatrix a, const Rational& s) {
    for (auto& x : a.a_) x *= s;
    return a;
  }
  friend RationalMatrix operator*(const Rational& s, RationalMatrix a) { return std::move(a) * s; }
  RationalMatrix operator-() const { return *this * Rational(-1); }
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
    RationalMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += x * b(k, j);
      }
    return r;
  }
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  RationalMatrix pow(unsigned k) const {
    RationalMatrix r = identity(rows_);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
      s += "]";
    }
    return s + "]";
  }

 private:
  void same_shape(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch");
  }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

// Dense matrix of weighted polynomials sharing one weight vector.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, const Weights& w)
      : rows_(rows), cols_(cols), weights_(w), a_(rows * cols, WeightedPoly(w)) {}

  static PolyMatrix constant(const RationalMatrix& m, const Weights& w) {
    PolyMatrix p(m.rows(), m.cols(), w);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m(i, j).is_zero()) p(i, j) = WeightedPoly::constant(w, m(i, j));
    return p;
  }
  static PolyMatrix identity(std::size_t n, const Weights& w) {
    return constant(RationalMatrix::identity(n), w);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Weights& weights() const { return weights_; }
  WeightedPoly& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const WeightedPoly& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& p : a_)
      if (!p.is_zero()) return false;
    return true;
  }

  PolyMatrix& operator+=(const PolyMatrix& o) {
    same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  PolyMatrix& operator-=(const PolyMatrix& o) {
    same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
  friend PolyMatrix operator*(PolyMatrix a, const Rational& s) {
    for (auto& x : a.a_) x *= s;
    return a;
  }
  friend PolyMatrix operator*(const WeightedPoly& s, PolyMatrix a) {
    for (auto& x : a.a_) x = s * x;
    return a;
  }
  PolyMatrix operator-() const { return *this * Rational(-1); }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
    if (a.weights_ != b.weights_) throw WeightMismatch();
    PolyMatrix r(a.rows_, b.cols_, a.weights_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const WeightedPoly& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) r(i, j) += x * b(k, j);
      }
    return r;
  }
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.weights_ == b.weights_ && a.a_ == b.a_;
  }

  PolyMatrix transpose() const {
    PolyMatrix t(cols_, rows_, weights_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  PolyMatrix minor_matrix(std::size_t skip_row, std::size_t skip_col) const {
    PolyMatrix m(rows_ - 1, cols_ - 1, weights_);
    for (std::size_t i = 0, r = 0; i < rows_; ++i) {
      if (i == skip_row) continue;
      for (std::size_t j = 0, c = 0; j < cols_; ++j) {
        if (j == skip_col) continue;
        m(r, c++) = (*this)(i, j);
      }
      ++r;
    }
    return m;
  }

 private:
  void same_shape(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch");
    if (weights_ != o.weights_) throw WeightMismatch();
  }
  std::size_t rows_ = 0, cols_ = 0;
  Weights weights_;
  std::vector<WeightedPoly> a_;
};

// Fraction-free Bareiss elimination; every division is exact.
inline WeightedPoly determinant(const PolyMatrix& a) {
  if (a.rows() != a.cols()) throw Error("determinant of non-square matrix");
  const std::size_t n = a.rows();
  const Weights& w = a.weights();
  if (n == 0) return WeightedPoly::constant(w, 1);
  PolyMatrix m = a;
  WeightedPoly prev = WeightedPoly::constant(w, 1);
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k).is_zero()) ++p;
    if (p == n) return WeightedPoly(w);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = exact_divide(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
      m(i, k) = WeightedPoly(w);
    }
    prev = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

// adj(A) with adj(A) * A = A * adj(A) = det(A) * I.
inline PolyMatrix adjugate(const PolyMatrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw Error("adjugate of non-square matrix");
  PolyMatrix adj(n, n, a.weights());
  if (n == 1) {
    adj(0, 0) = WeightedPoly::constant(a.weights(), 1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      WeightedPoly c = determinant(a.minor_matrix(i, j));
      adj(j, i) = ((i + j) % 2) ? -c : c;
    }
  return adj;
}

}  // namespace logres::exact
