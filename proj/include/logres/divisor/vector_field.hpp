#pragma once

#include <vector>

#include "logres/exact/matrix.hpp"
#include "logres/exact/poly.hpp"

namespace logres::divisor {

using exact::PolyMatrix;
using exact::Rational;
using exact::Weights;
using exact::WeightedPoly;

// Sum_i a_i(z) d/dz_i.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<WeightedPoly> coeffs) : a_(std::move(coeffs)) {
    for (const auto& c : a_)
      if (c.weights() != a_.front().weights()) throw exact::WeightMismatch();
  }
  static VectorField zero(const Weights& w) {
    return VectorField(std::vector<WeightedPoly>(w.size(), WeightedPoly(w)));
  }
  // Euler field sum_i w_i z_i d/dz_i.
  static VectorField euler(const Weights& w) {
    std::vector<WeightedPoly> c;
    for (std::size_t i = 0; i < w.size(); ++i)
      c.push_back(WeightedPoly::variable(w, i) * Rational(w[i]));
    return VectorField(std::move(c));
  }

  std::size_t dim() const { return a_.size(); }
  const Weights& weights() const { return a_.front().weights(); }
  const WeightedPoly& operator[](std::size_t i) const { return a_[i]; }
  const std::vector<WeightedPoly>& coeffs() const { return a_; }
  bool is_zero() const {
    for (const auto& c : a_)
      if (!c.is_zero()) return false;
    return true;
  }

  WeightedPoly apply(const WeightedPoly& p) const {
    WeightedPoly out(p.weights());
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (!a_[i].is_zero()) out += a_[i] * exact::partial_derivative(p, i);
    return out;
  }

  // Entrywise derivative of a matrix of functions.
  PolyMatrix apply(const PolyMatrix& m) const {
    PolyMatrix out(m.rows(), m.cols(), m.weights());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = apply(m(r, c));
    return out;
  }

  VectorField& operator+=(const VectorField& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  VectorField& operator-=(const VectorField& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const WeightedPoly& s, VectorField v) {
    for (auto& c : v.a_) c = s * c;
    return v;
  }
  friend VectorField operator*(const Rational& s, VectorField v) {
    for (auto& c : v.a_) c *= s;
    return v;
  }
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.a_ == b.a_; }

 private:
  std::vector<WeightedPoly> a_;
};

// [v, w] = v(w) - w(v), componentwise.
inline VectorField bracket(const VectorField& v, const VectorField& w) {
  if (v.dim() != w.dim()) throw Error("vector fields live in different spaces");
  std::vector<WeightedPoly> c;
  for (std::size_t i = 0; i < v.dim(); ++i) c.push_back(v.apply(w[i]) - w.apply(v[i]));
  return VectorField(std::move(c));
}

}  // namespace logres::divisor
