#pragma once

#include <string>
#include <vector>

#include "logres/divisor/free_divisor.hpp"
#include "logres/liealg/liealg.hpp"

namespace logres::normalform {

using divisor::FreeDivisor;
using divisor::StructureFunctions;
using divisor::VectorField;
using exact::Monomial;
using exact::PolyMatrix;
using exact::Rational;
using exact::RationalMatrix;
using exact::Weights;
using exact::WeightedPoly;

struct NormalFormError : Error {
  using Error::Error;
};

// A matrix of weighted-homogeneous functions, m x m.
using MatrixPolyMap = PolyMatrix;

inline PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b) { return a * b - b * a; }

// [X, Y] = -(XY - YX), the bracket every connection equation is written in
inline PolyMatrix reversed_bracket(const PolyMatrix& a, const PolyMatrix& b) { return b * a - a * b; }

// omega(V_i) for every frame element, in frame order.
struct LogConnection {
  std::vector<MatrixPolyMap> omega;

  std::size_t rank() const { return omega.empty() ? 0 : omega.front().rows(); }
};

inline void check_connection(const FreeDivisor& d, const LogConnection& c) {
  if (c.omega.size() != d.n())
    throw NormalFormError("connection has " + std::to_string(c.omega.size()) +
                          " components but the frame has " + std::to_string(d.n()));
  const std::size_t m = c.rank();
  if (m == 0) throw NormalFormError("connection components are empty");
  for (std::size_t i = 0; i < c.omega.size(); ++i) {
    const auto& w = c.omega[i];
    if (w.rows() != m || w.cols() != m)
      throw NormalFormError("component " + d.frame[i].name + " has the wrong shape");
    if (w.weights() != d.weights) throw NormalFormError("component " + d.frame[i].name + " uses other weights");
  }
}

struct CurvatureEntry {
  std::size_t i = 0, j = 0;
  MatrixPolyMap value;
};

// R(V_i, V_j) = V_i(w_j) - V_j(w_i) - sum_k c_ij^k w_k + [w_i, w_j]_p, for i < j.
inline std::vector<CurvatureEntry> curvature(const FreeDivisor& d, const StructureFunctions& sf,
                                             const LogConnection& c) {
  check_connection(d, c);
  const std::size_t n = d.n();
  std::vector<CurvatureEntry> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      PolyMatrix r = d.frame[i].field.apply(c.omega[j]) - d.frame[j].field.apply(c.omega[i]);
      for (std::size_t k = 0; k < n; ++k)
        if (!sf(i, j, k).is_zero()) r -= sf(i, j, k) * c.omega[k];
      r += reversed_bracket(c.omega[i], c.omega[j]);
      out.push_back({i, j, std::move(r)});
    }
  return out;
}

inline bool is_flat(const FreeDivisor& d, const StructureFunctions& sf, const LogConnection& c) {
  for (const auto& e : curvature(d, sf, c))
    if (!e.value.is_zero()) return false;
  return true;
}

inline bool is_flat(const FreeDivisor& d, const LogConnection& c) {
  return is_flat(d, divisor::structure_functions(d), c);
}

}  // namespace logres::normalform
