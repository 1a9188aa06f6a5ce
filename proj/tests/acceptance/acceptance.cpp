// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "logres/divisor/catalog.hpp"
#include "logres/io/json.hpp"
#include "oracles/flatness.hpp"

using namespace logres;
using divisor::FreeDivisor;
using exact::PolyMatrix;
using exact::Rational;
using exact::RationalMatrix;
using exact::WeightedPoly;
using liealg::ResidueData;

namespace {

// Collects failures instead of stopping at the first one.
struct Check {
  std::vector<std::string> failures;
  std::size_t count = 0;

  void operator()(bool ok, const std::string& what) {
    ++count;
    if (!ok) failures.push_back(what);
  }
};

const RationalMatrix kS01 = RationalMatrix::diagonal({0, 1});

ResidueData first_slot(const FreeDivisor& d, const RationalMatrix& s) {
  auto comb = d.euler_combination();
  ResidueData r{std::vector<RationalMatrix>(comb.size(), RationalMatrix(s.rows(), s.rows())), comb, {}};
  r.s[0] = s;
  return r;
}

WeightedPoly P(const FreeDivisor& d, const std::string& s) { return exact::parse_poly(s, d.variables, d.weights); }

std::size_t at(const FreeDivisor& d, const std::string& name) {
  for (std::size_t i = 0; i < d.frame.size(); ++i)
    if (d.frame[i].name == name) return i;
  throw Error("no frame element " + name);
}

// [A, B] = sum of the listed terms, everything else zero.
void bracket_is(Check& ck, const FreeDivisor& d, const divisor::StructureFunctions& sf, const std::string& a,
                const std::string& b, const std::map<std::string, std::string>& terms) {
  for (std::size_t k = 0; k < d.n(); ++k) {
    auto it = terms.find(d.frame[k].name);
    auto want = it == terms.end() ? WeightedPoly(d.weights) : P(d, it->second);
    ck(sf(at(d, a), at(d, b), k) == want, d.name + ": [" + a + "," + b + "] along " + d.frame[k].name);
  }
}

// d xi^k as a map from wedge pairs to coefficients.
void form_is(Check& ck, const FreeDivisor& d, const std::vector<std::vector<divisor::FormTerm>>& fs,
             const std::string& k, const std::map<std::pair<std::string, std::string>, std::string>& want) {
  std::map<std::pair<std::string, std::string>, WeightedPoly> got;
  for (const auto& t : fs[at(d, k)]) got.emplace(std::make_pair(d.frame[t.i].name, d.frame[t.j].name), t.coeff);
  std::map<std::pair<std::string, std::string>, WeightedPoly> expect;
  for (const auto& [pair, c] : want) {
    // Written with the pair in either order; normalise to frame order.
    auto [a, b] = pair;
    auto poly = P(d, c);
    if (at(d, a) > at(d, b)) {
      std::swap(a, b);
      poly = -poly;
    }
    expect.emplace(std::make_pair(a, b), poly);
  }
  ck(got == expect, d.name + ": d xi_" + k);
}

// ---------------------------------------------------------------------------

Check catalog_fidelity() {
  Check ck;
  std::vector<FreeDivisor> all{divisor::cusp(), divisor::g2(), divisor::borel2(), divisor::sekiguchi_b5()};
  for (int k = 1; k <= 4; ++k) all.push_back(divisor::normal_crossing(k));
  for (const auto& d : all) ck(divisor::verify_saito(d).ok, d.name + ": Saito");

  auto c = divisor::cusp();
  bracket_is(ck, c, divisor::structure_functions(c), "E", "V", {{"V", "1"}});

  auto g = divisor::g2();
  auto gsf = divisor::structure_functions(g);
  bracket_is(ck, g, gsf, "Vh", "Vf", {{"Vf", "2"}});
  bracket_is(ck, g, gsf, "Vh", "Ve", {{"Ve", "-2"}});
  bracket_is(ck, g, gsf, "Vf", "Ve", {{"Vh", "1"}});
  for (const char* v : {"Vh", "Vf", "Ve"}) bracket_is(ck, g, gsf, "E", v, {});
  auto gfs = divisor::form_structure_equations(gsf);
  form_is(ck, g, gfs, "E", {});
  form_is(ck, g, gfs, "Vh", {{{"Ve", "Vf"}, "1"}});
  form_is(ck, g, gfs, "Ve", {{{"Vh", "Ve"}, "2"}});
  form_is(ck, g, gfs, "Vf", {{{"Vh", "Vf"}, "-2"}});

  auto b = divisor::borel2();
  auto bsf = divisor::structure_functions(b);
  bracket_is(ck, b, bsf, "E1", "E2", {});
  bracket_is(ck, b, bsf, "E1", "V", {{"V", "1"}});
  bracket_is(ck, b, bsf, "E2", "V", {{"V", "-1"}});

  auto s = divisor::sekiguchi_b5();
  auto ssf = divisor::structure_functions(s);
  bracket_is(ck, s, ssf, "E", "V", {{"V", "1"}});
  bracket_is(ck, s, ssf, "E", "W", {{"W", "2"}});
  bracket_is(ck, s, ssf, "V", "W", {{"E", "24*z"}, {"V", "6*y"}, {"W", "-40*x"}});
  auto dl = divisor::dlog_f_expansion(s);
  ck(dl.size() == 3 && dl[0] == P(s, "9") && dl[1] == P(s, "-96*x") && dl[2] == P(s, "-36*y"),
     "sekiguchi_b5: dlog f = (9, -96x, -36y)");
  auto sfs = divisor::form_structure_equations(ssf);
  form_is(ck, s, sfs, "E", {{{"V", "W"}, "-24*z"}});
  form_is(ck, s, sfs, "V", {{{"E", "V"}, "-1"}, {{"V", "W"}, "-6*y"}});
  form_is(ck, s, sfs, "W", {{{"E", "W"}, "-2"}, {{"V", "W"}, "40*x"}});
  return ck;
}

// The coordinate of U_F at a given slot, entry and monomial.
std::string w1_coordinate(const normalform::PolySystem& sys, std::size_t slot, std::size_t r, std::size_t c,
                          const std::string& mono) {
  for (const auto& co : sys.coordinates)
    if (co.family == normalform::Family::w1 && co.prov.slot == slot && co.prov.row == r && co.prov.col == c &&
        exact::monomial_string(co.prov.monomial, sys.base_variables) == mono)
      return co.name;
  throw Error("no U_F coordinate at " + mono);
}

Check reduced_structure_ansatz() {
  Check ck;
  auto nf = normalform::analyze(divisor::sekiguchi_b5(), ResidueData{{kS01}, {1}, {}});
  auto sys = normalform::emit_xf(nf);
  // B = E12 + a22 x E22, C = d x E12 + (c22 x^2 + f22 y) E22, N = 0.
  std::vector<std::string> vars{"a22", "d", "c22", "f22"};
  const exact::Weights vw(4, 1);
  auto var = [&](std::size_t i) { return WeightedPoly::variable(vw, i); };
  std::map<std::string, WeightedPoly> ansatz{
      {w1_coordinate(sys, 0, 0, 1, "1"), WeightedPoly::constant(vw, 1)},
      {w1_coordinate(sys, 0, 1, 1, "x"), var(0)},
      {w1_coordinate(sys, 1, 0, 1, "x"), var(1)},
      {w1_coordinate(sys, 1, 1, 1, "x^2"), var(2)},
      {w1_coordinate(sys, 1, 1, 1, "y"), var(3)},
  };
  auto eqs = normalform::substitute(sys, vars, ansatz);
  auto Q = [&](const std::string& s) { return exact::parse_poly(s, vars, vw); };
  const std::vector<WeightedPoly> displayed{Q("2*d - 6 - f22"), Q("c22 - d*(40 + a22)"),
                                            Q("4*c22 + 16*f22 - 6*a22"), Q("2*f22 - 3*a22 - 24"), Q("c22")};
  ck(eqs.size() == 5, "five equations survive the restriction");
  std::vector<int> hit(displayed.size(), 0);
  for (const auto& e : eqs) {
    int matches = 0;
    for (std::size_t k = 0; k < displayed.size(); ++k) {
      const auto& [lm, lc] = displayed[k].leading();
      Rational ratio = e.poly.coefficient(lm) / lc;
      if (!ratio.is_zero() && e.poly == displayed[k] * ratio) {
        ++matches;
        ++hit[k];
      }
    }
    ck(matches == 1, e.label + " is a multiple of exactly one displayed equation");
  }
  ck(hit == std::vector<int>(displayed.size(), 1), "every displayed equation appears once");

  auto cert = normalform::linear_propagation(eqs, vars);
  ck(cert.inconsistent, "rref certifies inconsistency");
  WeightedPoly combo(vw);
  for (std::size_t r = 0; r < cert.y.size() && r < cert.final_linear.size(); ++r)
    combo += cert.final_linear[r] * cert.y[r];
  ck(combo.is_constant() && !combo.is_zero(), "certificate combination is a nonzero constant");
  std::map<std::string, Rational> got;
  for (const auto& s : cert.steps) got[s.variable] = s.value;
  ck(got == std::map<std::string, Rational>{{"a22", Rational(-32, 3)}, {"c22", 0}, {"d", 1}, {"f22", -4}},
     "forced values a22 = -32/3, d = 1, c22 = 0, f22 = -4");
  return ck;
}

Check oracle_equivalence() {
  Check ck;
  const std::vector<std::string> names{"cusp", "normal_crossing(1)", "normal_crossing(2)", "normal_crossing(3)",
                                       "normal_crossing(4)", "d4", "g2", "borel2", "sekiguchi_b5"};
  oracle::Sampler sm(20261016);
  std::size_t flat_points = 0, total = 0;
  for (const auto& name : names)
    for (const auto& s : {RationalMatrix(2, 2), kS01}) {
      auto d = divisor::catalog(name);
      const std::string tag = name + " S=" + s.to_string();
      auto nf = normalform::analyze(d, first_slot(d, s));
      auto sys = normalform::emit_xf(nf);
      for (int t = 0; t < 50; ++t) {
        auto coords = oracle::random_coordinates(sm, sys.coordinates.size());
        auto p = normalform::point_from_coordinates(nf, coords);
        auto x = normalform::check_xf_point(nf, sys, p);
        // The polynomial system without nilpotency, evaluated coordinate-wise.
        auto values = normalform::evaluate(sys, coords);
        bool system_zero = true;
        for (std::size_t e = 0; e < values.size(); ++e)
          if (sys.equations[e].tag != "nilpotency" && !values[e].is_zero()) system_zero = false;
        bool flat = normalform::is_flat(d, nf.setup.sf, normalform::assemble_connection(nf, p));
        ck(x.in_space, tag + ": point lies in the span");
        ck(system_zero == flat, tag + ": PolySystem(p) = 0 iff flat");
        ck(x.emitted_agrees, tag + ": per-coefficient agreement");
        ck(oracle::curvature_identity_mismatch(nf, p).empty(), tag + ": curvature identity");
        flat_points += flat;
        ++total;
      }
    }
  ck(flat_points > 0 && flat_points < total, "both verdicts occur among the sampled points");
  return ck;
}

// Squarefree part of the Leibniz characteristic polynomial kills a semisimple matrix.
bool semisimple_oracle(const RationalMatrix& s) {
  auto chi = oracle::leibniz_charpoly(s);
  auto g = exact::squarefree_part(chi);
  RationalMatrix acc(s.rows(), s.cols());
  for (int i = g.degree(); i >= 0; --i) acc = acc * s + RationalMatrix::identity(s.rows()) * g.coeff(i);
  return acc.is_zero();
}

bool nilpotent_oracle(const RationalMatrix& n) {
  RationalMatrix p = RationalMatrix::identity(n.rows());
  for (std::size_t k = 0; k < n.rows(); ++k) p = p * n;
  return p.is_zero();
}

Check jordan_chevalley_suite() {
  Check ck;
  oracle::Sampler sm(4);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = t % 2 ? 3 : 2;
    auto a = sm.jordan_like(n);
    const std::string tag = "matrix " + std::to_string(t) + " " + a.to_string();
    auto add = liealg::jordan_chevalley(a);
    ck(add.s + add.rest == a, tag + ": S + N = A");
    ck(liealg::commutator(add.s, add.rest).is_zero(), tag + ": [S, N] = 0");
    ck(semisimple_oracle(add.s), tag + ": S semisimple");
    ck(nilpotent_oracle(add.rest), tag + ": N nilpotent");
    auto again_s = liealg::jordan_chevalley(add.s), again_n = liealg::jordan_chevalley(add.rest);
    ck(again_s.s == add.s && again_s.rest.is_zero(), tag + ": idempotent on S");
    ck(again_n.s.is_zero() && again_n.rest == add.rest, tag + ": idempotent on N");
    if (!exact::inverse(a)) continue;
    auto mul = liealg::jordan_chevalley(a, liealg::JCMode::multiplicative);
    const auto id = RationalMatrix::identity(n);
    ck(mul.s * mul.rest == a, tag + ": S U = A");
    ck(liealg::commutator(mul.s, mul.rest).is_zero(), tag + ": [S, U] = 0");
    ck(semisimple_oracle(mul.s), tag + ": multiplicative S semisimple");
    ck(nilpotent_oracle(mul.rest - id), tag + ": U unipotent");
    auto ms = liealg::jordan_chevalley(mul.s, liealg::JCMode::multiplicative);
    ck(ms.s == mul.s && ms.rest == id, tag + ": idempotent on multiplicative S");
    auto mu = liealg::jordan_chevalley(mul.rest, liealg::JCMode::multiplicative);
    ck(mu.s == id && mu.rest == mul.rest, tag + ": idempotent on U");
    ck(liealg::exp_nilpotent(liealg::log_unipotent(mul.rest)) == mul.rest, tag + ": exp(log U) = U");
  }
  return ck;
}

Check dimensions_vs_brute_force() {
  Check ck;
  for (const auto& name : {"cusp", "sekiguchi_b5", "normal_crossing(2)"}) {
    auto d = divisor::catalog(name);
    auto nf = normalform::analyze(d, first_slot(d, kS01));
    const auto& st = nf.setup;
    const std::size_t k = st.ad.toral.size();
    ck(nf.w1.dim() == oracle::brute_w1_dim(st), std::string(name) + ": dim U_F");
    ck(nf.w2.dim() == oracle::brute_w2_dim(st, k), std::string(name) + ": dim W2");
    ck(nf.aut.dim() == oracle::brute_w2_dim(st, 1), std::string(name) + ": dim aut");
  }
  return ck;
}

Check sign_pinning() {
  Check ck;
  auto a2 = divisor::normal_crossing(1);
  for (const auto& s : {kS01, RationalMatrix::diagonal({0, 2}), RationalMatrix::diagonal({0, 1, 3})}) {
    auto st = normalform::make_setup(a2, ResidueData{{s}, {1}, {}});
    auto w2 = normalform::solve_w2(st);
    ck(w2.dim() > 0, "A2 " + s.to_string() + ": W2 is nonzero");
    for (const auto& b : w2.basis) {
      // N = z^i N0: read off N0 and test the commutator.
      RationalMatrix n0(s.rows(), s.rows());
      bool monomial = true;
      for (std::size_t r = 0; r < s.rows(); ++r)
        for (std::size_t c = 0; c < s.rows(); ++c)
          for (const auto& [mo, v] : b.value[0](r, c).terms()) {
            monomial = monomial && mo[0] == b.degree;
            n0(r, c) = v;
          }
      ck(monomial, "A2: N is homogeneous of its degree");
      ck(liealg::commutator(s, n0) == n0 * Rational(b.degree), "A2 " + s.to_string() + ": [S, N] = i N");
    }
  }

  // Any admissible point: (S + N, B - 32/3 x N, C - 4 y N).
  auto sek = divisor::sekiguchi_b5();
  oracle::Sampler sm(6);
  for (const auto& s : {kS01, RationalMatrix(2, 2)}) {
    auto nf = normalform::analyze(sek, ResidueData{{s}, {1}, {}});
    for (int t = 0; t < 20; ++t) {
      auto coords = oracle::random_coordinates(sm, nf.w1.dim() + nf.w2.dim());
      auto p = normalform::point_from_coordinates(nf, coords);
      auto c = normalform::assemble_connection(nf, p);
      const auto& n = p.n[0];
      ck(c.omega[at(sek, "E")] == nf.setup.s_poly(0) + n, "Sekiguchi E component");
      ck(c.omega[at(sek, "V")] == p.b[0] + P(sek, "-32/3*x") * n, "Sekiguchi V component");
      ck(c.omega[at(sek, "W")] == p.b[1] + P(sek, "-4*y") * n, "Sekiguchi W component");
    }
  }
  return ck;
}

struct Captured {
  int code = -1;
  std::string out;
};

Captured capture(const std::string& cmd) {
  Captured c;
  FILE* f = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!f) return c;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) c.out.append(buf.data(), n);
  int status = pclose(f);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

Check cli_determinism() {
  Check ck;
  const std::string cli = LOGRES_CLI, data = LOGRES_DATA_DIR;
  const std::vector<std::string> suite{
      "catalog",
      "catalog --catalog sekiguchi_b5",
      "verify-divisor --catalog sekiguchi_b5 --seed 3",
      "verify-divisor --catalog g2 --seed 3 --trials 12",
      "frame-info --catalog sekiguchi_b5",
      "frame-info --catalog d4",
      "residue-space --catalog cusp --residue " + data + "/S01.json",
      "residue-space --catalog g2 --residue " + data + "/g2_sl2.json",
      "emit-moduli --catalog cusp --residue " + data + "/S01.json",
      "emit-moduli --catalog sekiguchi_b5 --residue " + data + "/S01.json --ansatz " + data +
          "/sekiguchi_ansatz.json",
      "emit-moduli --catalog normal_crossing:2 --residue " + data + "/nc2_S01.json",
      "check-flat --connection " + data + "/cusp_connection.json",
      "check-point --catalog sekiguchi_b5 --residue " + data + "/S01.json --point " + data + "/sekiguchi_point.json",
      "jordan --mode multiplicative --matrix " + data + "/J.json",
      "jordan --matrix " + data + "/J.json",
  };
  std::string first, second;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& args : suite) {
      auto c = capture(cli + " " + args + " --format json");
      ck(c.code == 0, "exit code of: logres " + args);
      if (pass == 0) ck(!c.out.empty(), "output of: logres " + args);
      (pass ? second : first) += "== " + args + "\n" + c.out;
    }
  ck(first == second, "two runs are byte-identical");
  return ck;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"catalog fidelity", catalog_fidelity},
      {"reduced-structure ansatz is inconsistent", reduced_structure_ansatz},
      {"oracle equivalence on random points", oracle_equivalence},
      {"Jordan-Chevalley suite", jordan_chevalley_suite},
      {"graded dimensions vs brute force", dimensions_vs_brute_force},
      {"sign pinning and Sekiguchi components", sign_pinning},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check ck;
    try {
      ck = criteria[i].second();
    } catch (const std::exception& e) {
      ck.failures.push_back(std::string("exception: ") + e.what());
    }
    bool ok = ck.failures.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << " (" << ck.count
              << " checks)\n";
    for (std::size_t f = 0; f < ck.failures.size() && f < 10; ++f) std::cout << "        " << ck.failures[f] << "\n";
  }
  return failed ? 1 : 0;
}
