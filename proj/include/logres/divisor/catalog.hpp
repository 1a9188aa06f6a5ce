#pragma once

#include <string>
#include <vector>

#include "logres/divisor/free_divisor.hpp"

namespace logres::divisor {

namespace detail {

inline VectorField field(const std::vector<std::string>& polys, const std::vector<std::string>& names,
                         const Weights& w) {
  std::vector<WeightedPoly> c;
  for (const auto& p : polys) c.push_back(exact::parse_poly(p, names, w));
  return VectorField(std::move(c));
}

inline FrameElement element(std::string name, FrameKind kind, VectorField v, int grade = 0,
                            bool distinguished = false) {
  return FrameElement{std::move(name), kind, grade, distinguished, std::move(v)};
}

}  // namespace detail

// Quasi-homogeneous plane curve f(x, y) of degree n for E = p x dx + q y dy,
// with frame E and V = -f_y dx + f_x dy of grade n - p - q.
inline FreeDivisor plane_curve(int p, int q, const std::string& f_text, std::string name = "plane_curve") {
  FreeDivisor d;
  d.name = std::move(name);
  d.variables = {"x", "y"};
  d.weights = {p, q};
  d.f = exact::parse_poly(f_text, d.variables, d.weights);
  auto deg = d.f.homogeneous_degree();
  if (!deg) throw DivisorError("plane curve polynomial is not weighted homogeneous");
  d.degree = *deg;
  d.frame.push_back(detail::element("E", FrameKind::toral, VectorField::euler(d.weights), 0, true));
  VectorField v({-exact::partial_derivative(d.f, 1), exact::partial_derivative(d.f, 0)});
  d.frame.push_back(detail::element("V", FrameKind::w, std::move(v), d.degree - p - q));
  return d;
}

inline FreeDivisor cusp() { return plane_curve(3, 2, "x^2 - y^3", "cusp"); }

inline FreeDivisor normal_crossing(int k) {
  if (k < 1) throw DivisorError("normal_crossing needs k >= 1");
  FreeDivisor d;
  d.name = "normal_crossing(" + std::to_string(k) + ")";
  for (int i = 1; i <= k; ++i) d.variables.push_back("z" + std::to_string(i));
  d.weights.assign(static_cast<std::size_t>(k), 1);
  d.f = WeightedPoly::constant(d.weights, 1);
  for (int i = 0; i < k; ++i) {
    auto zi = WeightedPoly::variable(d.weights, static_cast<std::size_t>(i));
    d.f *= zi;
    d.factors.push_back(zi);
    auto v = VectorField::zero(d.weights).coeffs();
    v[static_cast<std::size_t>(i)] = zi;
    d.frame.push_back(detail::element("E" + std::to_string(i + 1), FrameKind::toral,
                                      VectorField(std::move(v))));
  }
  d.degree = k;
  d.euler.assign(static_cast<std::size_t>(k), 1);
  return d;
}

// (C*)^3 x SL2 acting on three copies of C^2; frame obtained by
// differentiating the action at the identity.
inline FreeDivisor d4() {
  FreeDivisor d;
  d.name = "d4";
  d.variables = {"u1", "u2", "v1", "v2", "w1", "w2"};
  d.weights.assign(6, 1);
  const auto& n = d.variables;
  const auto& w = d.weights;
  d.factors = {exact::parse_poly("u1*v2 - u2*v1", n, w), exact::parse_poly("v1*w2 - v2*w1", n, w),
               exact::parse_poly("w1*u2 - w2*u1", n, w)};
  d.f = d.factors[0] * d.factors[1] * d.factors[2];
  d.degree = 6;
  d.frame = {
      detail::element("Ea", FrameKind::toral, detail::field({"u1", "u2", "0", "0", "0", "0"}, n, w)),
      detail::element("Eb", FrameKind::toral, detail::field({"0", "0", "v1", "v2", "0", "0"}, n, w)),
      detail::element("Ec", FrameKind::toral, detail::field({"0", "0", "0", "0", "w1", "w2"}, n, w)),
      detail::element("Yh", FrameKind::semisimple,
                      detail::field({"u1", "-u2", "v1", "-v2", "w1", "-w2"}, n, w)),
      detail::element("Ye", FrameKind::semisimple, detail::field({"u2", "0", "v2", "0", "w2", "0"}, n, w)),
      detail::element("Yf", FrameKind::semisimple, detail::field({"0", "u1", "0", "v1", "0", "w1"}, n, w)),
  };
  d.euler = {1, 1, 1};
  return d;
}

// Binary cubics x e1^3 + y e1^2 e2 + z e1 e2^2 + w e2^3 under GL2.
inline FreeDivisor g2() {
  FreeDivisor d;
  d.name = "g2";
  d.variables = {"x", "y", "z", "w"};
  d.weights = {3, 3, 3, 3};
  const auto& n = d.variables;
  const auto& w = d.weights;
  d.f = exact::parse_poly("27*w^2*x^2 - 18*w*x*y*z + 4*w*y^3 + 4*x*z^3 - y^2*z^2", n, w);
  d.degree = 12;
  d.frame = {
      detail::element("E", FrameKind::toral, VectorField::euler(w), 0, true),
      detail::element("Vh", FrameKind::semisimple, detail::field({"3*x", "y", "-z", "-3*w"}, n, w)),
      detail::element("Vf", FrameKind::semisimple, detail::field({"0", "3*x", "2*y", "z"}, n, w)),
      detail::element("Ve", FrameKind::semisimple, detail::field({"y", "2*z", "3*w", "0"}, n, w)),
  };
  return d;
}

// Symmetric 2x2 matrices [[x, y], [y, z]] under the upper-triangular Borel.
inline FreeDivisor borel2() {
  FreeDivisor d;
  d.name = "borel2";
  d.variables = {"x", "y", "z"};
  d.weights = {2, 2, 2};
  const auto& n = d.variables;
  const auto& w = d.weights;
  d.f = exact::parse_poly("x*(y^2 - x*z)", n, w);
  d.degree = 6;
  d.factors = {exact::parse_poly("x", n, w), exact::parse_poly("x*z - y^2", n, w)};
  d.frame = {
      detail::element("E1", FrameKind::toral, detail::field({"2*x", "y", "0"}, n, w)),
      detail::element("E2", FrameKind::toral, detail::field({"0", "y", "2*z"}, n, w)),
      detail::element("V", FrameKind::w, detail::field({"0", "x", "2*y"}, n, w), 0),
  };
  d.euler = {1, 1};
  return d;
}

inline FreeDivisor sekiguchi_b5() {
  FreeDivisor d;
  d.name = "sekiguchi_b5";
  d.variables = {"x", "y", "z"};
  d.weights = {1, 2, 3};
  const auto& n = d.variables;
  const auto& w = d.weights;
  d.f = exact::parse_poly("x*y^4 + y^3*z + z^3", n, w);
  d.degree = 9;
  d.frame = {
      detail::element("E", FrameKind::toral, VectorField::euler(w), 0, true),
      detail::element("V", FrameKind::w,
                      detail::field({"2*y", "-24*x*y + 2*z", "-2*y^2 - 32*x*z"}, n, w), 1),
      detail::element("W", FrameKind::w, detail::field({"3*z", "-9*y^2", "-12*y*z"}, n, w), 2),
  };
  return d;
}

inline std::vector<std::string> catalog_names() {
  return {"cusp", "normal_crossing(k)", "d4", "g2", "borel2", "sekiguchi_b5"};
}

// Accepts "normal_crossing", "normal_crossing:3" and "normal_crossing(3)".
inline FreeDivisor catalog(const std::string& name) {
  if (name == "cusp") return cusp();
  if (name == "d4") return d4();
  if (name == "g2") return g2();
  if (name == "borel2") return borel2();
  if (name == "sekiguchi_b5") return sekiguchi_b5();
  const std::string nc = "normal_crossing";
  if (name.rfind(nc, 0) == 0) {
    std::string rest = name.substr(nc.size());
    if (rest.empty()) return normal_crossing(2);
    std::string digits;
    if (rest.front() == ':') digits = rest.substr(1);
    else if (rest.front() == '(' && rest.back() == ')') digits = rest.substr(1, rest.size() - 2);
    if (!digits.empty() && digits.size() <= 3 &&
        std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return normal_crossing(std::stoi(digits));
  }
  throw DivisorError("unknown catalog divisor '" + name + "'");
}

}  // namespace logres::divisor
