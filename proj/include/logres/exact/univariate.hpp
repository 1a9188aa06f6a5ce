#pragma once

#include <vector>

#include "logres/exact/rational.hpp"

namespace logres::exact {

// Dense univariate polynomial over Q, coefficients stored low degree first.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly constant(const Rational& a) { return UniPoly({a}); }
  static UniPoly x() { return UniPoly({Rational(0), Rational(1)}); }
  // t - a
  static UniPoly linear_root(const Rational& a) { return UniPoly({-a, Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const {
    return (i < 0 || i >= static_cast<int>(c_.size())) ? Rational() : c_[i];
  }
  Rational leading() const { return c_.empty() ? Rational() : c_.back(); }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(UniPoly a, const Rational& s) {
    for (auto& x : a.c_) x *= s;
    a.trim();
    return a;
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return UniPoly(std::move(r));
  }

  UniPoly monic() const {
    if (is_zero()) return {};
    return *this * (Rational(1) / leading());
  }

  Rational evaluate(const Rational& t) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  // Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw Error("univariate division by zero");
    std::vector<Rational> rem = c_;
    int dd = d.degree();
    std::vector<Rational> q(std::max(0, degree() - dd + 1));
    for (int k = degree(); k >= dd; --k) {
      Rational f = rem[k] / d.leading();
      if (f.is_zero()) continue;
      q[k - dd] = f;
      for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= f * d.c_[j];
    }
    return {UniPoly(std::move(q)), UniPoly(std::move(rem))};
  }

  std::string to_string(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (c_[i].is_zero()) continue;
      Rational a = c_[i].abs();
      std::string body = i == 0 ? a.str()
                                : (a == Rational(1) ? "" : a.str() + "*") + var +
                                      (i > 1 ? "^" + std::to_string(i) : "");
      if (s.empty()) s = (c_[i].sign() < 0 ? "-" : "") + body;
      else s += (c_[i].sign() < 0 ? " - " : " + ") + body;
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Monic squarefree part p / gcd(p, p').
inline UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return p.monic();
  UniPoly g = gcd(p, p.derivative());
  return p.divmod(g).first.monic();
}

}  // namespace logres::exact
