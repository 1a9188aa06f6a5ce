#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "logres/exact/rational.hpp"

namespace logres::exact {

using Monomial = std::vector<int>;
using Weights = std::vector<int>;

struct WeightMismatch : Error {
  WeightMismatch() : Error("polynomials have mismatched weight vectors") {}
};

struct InexactDivision : Error {
  using Error::Error;
};

inline int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

// Graded-lex, largest first: total degree, then lexicographic in variable order.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

inline bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Monomial mono_div(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// Sparse polynomial over Q graded by E-degree = sum(weights[i] * exponents[i]).
class WeightedPoly {
 public:
  using Terms = std::map<Monomial, Rational, GrlexGreater>;

  WeightedPoly() = default;
  explicit WeightedPoly(Weights w) : weights_(std::move(w)) {
    for (int x : weights_)
      if (x <= 0) throw Error("weights must be positive integers");
  }

  static WeightedPoly constant(const Weights& w, const Rational& c) {
    WeightedPoly p(w);
    p.add_term(Monomial(w.size(), 0), c);
    return p;
  }
  static WeightedPoly variable(const Weights& w, std::size_t i) {
    Monomial m(w.size(), 0);
    m.at(i) = 1;
    return term(w, std::move(m), Rational(1));
  }
  static WeightedPoly term(const Weights& w, Monomial m, const Rational& c) {
    if (m.size() != w.size()) throw Error("monomial length does not match variable count");
    for (int e : m)
      if (e < 0) throw Error("negative exponent");
    WeightedPoly p(w);
    p.add_term(m, c);
    return p;
  }

  std::size_t nvars() const { return weights_.size(); }
  const Weights& weights() const { return weights_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }
  Rational constant_term() const { return coefficient(Monomial(nvars(), 0)); }
  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational() : it->second;
  }
  const std::pair<const Monomial, Rational>& leading() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    return *terms_.begin();
  }

  int e_degree(const Monomial& m) const {
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += weights_[i] * m[i];
    return d;
  }
  // Single E-degree of a nonzero homogeneous polynomial.
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = e_degree(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
      if (e_degree(m) != d) return std::nullopt;
    return d;
  }
  bool is_homogeneous_of(int d) const {
    for (const auto& [m, c] : terms_)
      if (e_degree(m) != d) return false;
    return true;
  }
  int total_degree_max() const {
    return terms_.empty() ? -1 : exact::total_degree(terms_.begin()->first);
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  WeightedPoly& operator+=(const WeightedPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  WeightedPoly& operator-=(const WeightedPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  WeightedPoly& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend WeightedPoly operator+(WeightedPoly a, const WeightedPoly& b) { return a += b; }
  friend WeightedPoly operator-(WeightedPoly a, const WeightedPoly& b) { return a -= b; }
  friend WeightedPoly operator*(WeightedPoly a, const Rational& s) { return a *= s; }
  friend WeightedPoly operator*(const Rational& s, WeightedPoly a) { return a *= s; }
  WeightedPoly operator-() const { return *this * Rational(-1); }

  friend WeightedPoly operator*(const WeightedPoly& a, const WeightedPoly& b) {
    a.check(b);
    WeightedPoly r(a.weights_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
  }
  WeightedPoly& operator*=(const WeightedPoly& o) { return *this = *this * o; }

  friend bool operator==(const WeightedPoly& a, const WeightedPoly& b) {
    return a.weights_ == b.weights_ && a.terms_ == b.terms_;
  }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars()) throw Error("evaluation point has wrong dimension");
    Rational acc;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (int k = 0; k < m[i]; ++k) t *= point[i];
      acc += t;
    }
    return acc;
  }

  WeightedPoly pow(unsigned k) const {
    WeightedPoly r = constant(weights_, Rational(1));
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  std::string to_string(std::span<const std::string> names) const;
  std::string to_string() const;

 private:
  void check(const WeightedPoly& o) const {
    if (weights_ != o.weights_) throw WeightMismatch();
  }

  Weights weights_;
  Terms terms_;
};

enum class ArithOp { add, sub, mul };

inline WeightedPoly poly_arith(const WeightedPoly& a, const WeightedPoly& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
  }
  throw Error("unknown arithmetic op");
}

inline WeightedPoly partial_derivative(const WeightedPoly& p, std::size_t var) {
  if (var >= p.nvars()) throw Error("derivative variable out of range");
  WeightedPoly r(p.weights());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    r.add_term(d, c * Rational(m[var]));
  }
  return r;
}

inline std::map<int, WeightedPoly> graded_components(const WeightedPoly& p) {
  std::map<int, WeightedPoly> out;
  for (const auto& [m, c] : p.terms()) {
    int d = p.e_degree(m);
    auto it = out.try_emplace(d, WeightedPoly(p.weights())).first;
    it->second.add_term(m, c);
  }
  return out;
}

// Division by leading terms; succeeds exactly when den divides num.
inline std::optional<WeightedPoly> try_divide(const WeightedPoly& num, const WeightedPoly& den) {
  if (num.weights() != den.weights()) throw WeightMismatch();
  if (den.is_zero()) throw Error("division by the zero polynomial");
  const auto& [lm, lc] = den.leading();
  WeightedPoly rem = num;
  WeightedPoly q(num.weights());
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.leading();
    if (!divides(lm, rm)) return std::nullopt;
    WeightedPoly t = WeightedPoly::term(num.weights(), mono_div(rm, lm), rc / lc);
    q += t;
    rem -= t * den;
  }
  return q;
}

inline WeightedPoly exact_divide(const WeightedPoly& num, const WeightedPoly& den) {
  auto q = try_divide(num, den);
  if (!q) throw InexactDivision("inexact polynomial division (" + num.to_string() + ") / (" +
                                den.to_string() + ")");
  return *q;
}

// All monomials of E-degree d, largest first in graded-lex order.
inline std::vector<Monomial> monomials_of_degree(const Weights& w, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  Monomial cur(w.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == w.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int e = left / w[i]; e >= 0; --e) {
      cur[i] = e;
      self(self, i + 1, left - e * w[i]);
    }
    cur[i] = 0;
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), GrlexGreater{});
  return out;
}

inline std::vector<std::string> default_names(std::size_t n) {
  static const char* small[] = {"x", "y", "z", "w"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(n <= 4 ? small[i] : "z" + std::to_string(i + 1));
  return out;
}

inline std::string monomial_string(const Monomial& m, std::span<const std::string> names) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

inline std::string WeightedPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c.abs();
    bool unit_mono = exact::total_degree(m) == 0;
    std::string body;
    if (unit_mono) {
      body = a.str();
    } else if (a == Rational(1)) {
      body = monomial_string(m, names);
    } else {
      body = a.str() + "*" + monomial_string(m, names);
    }
    if (first) {
      out = (c.sign() < 0 ? "-" : "") + body;
      first = false;
    } else {
      out += (c.sign() < 0 ? " - " : " + ") + body;
    }
  }
  return out;
}

inline std::string WeightedPoly::to_string() const {
  auto names = default_names(nvars());
  return to_string(names);
}

// Recursive-descent parser for expressions such as "x*y^4 + y^3*z - 3/2*(x - y)^2".
class PolyParser {
 public:
  PolyParser(std::string_view text, std::span<const std::string> names, const Weights& w)
      : text_(text), names_(names.begin(), names.end()), weights_(w) {
    if (names_.size() != w.size()) throw Error("variable names and weights differ in length");
  }

  WeightedPoly parse() {
    WeightedPoly p = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at position " + std::to_string(pos_) + ": " + what +
                     " in '" + std::string(text_) + "'");
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  WeightedPoly expr() {
    WeightedPoly acc = term();
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }
  WeightedPoly term() {
    WeightedPoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }
  WeightedPoly factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    WeightedPoly b = base();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      b = b.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return b;
  }
  WeightedPoly base() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      WeightedPoly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::size_t ds = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (ds == pos_) fail("expected denominator");
      }
      return WeightedPoly::constant(weights_, Rational::parse(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(names_.begin(), names_.end(), name);
      if (it == names_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return WeightedPoly::variable(weights_, static_cast<std::size_t>(it - names_.begin()));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::vector<std::string> names_;
  Weights weights_;
  std::size_t pos_ = 0;
};

inline WeightedPoly parse_poly(std::string_view text, std::span<const std::string> names,
                               const Weights& w) {
  return PolyParser(text, names, w).parse();
}

}  // namespace logres::exact
