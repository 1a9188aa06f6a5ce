#include <catch_amalgamated.hpp>

#include <array>

#include "logres/divisor/catalog.hpp"
#include "oracles/brute.hpp"

using namespace logres::divisor;
using logres::exact::parse_poly;
using logres::exact::partial_derivative;

namespace {

WeightedPoly P(const FreeDivisor& d, const std::string& s) { return parse_poly(s, d.variables, d.weights); }

std::size_t idx(const FreeDivisor& d, const std::string& name) {
  for (std::size_t i = 0; i < d.frame.size(); ++i)
    if (d.frame[i].name == name) return i;
  throw std::runtime_error("no frame element " + name);
}

VectorField frame_combination(const FreeDivisor& d, const std::vector<WeightedPoly>& c) {
  VectorField out = VectorField::zero(d.weights);
  for (std::size_t k = 0; k < c.size(); ++k) out += c[k] * d.frame[k].field;
  return out;
}

std::vector<FreeDivisor> all_catalog() {
  return {cusp(),         normal_crossing(1), normal_crossing(2), normal_crossing(3),
          normal_crossing(4), d4(),           g2(),               borel2(),
          sekiguchi_b5(), plane_curve(1, 1, "x*y*(x - y)*(x + y)", "star")};
}

int grade_of(const FreeDivisor& d, std::size_t i) {
  return d.frame[i].kind == FrameKind::w ? d.frame[i].grade : 0;
}

}  // namespace

TEST_CASE("Saito criterion on the catalog") {
  CHECK(verify_saito(cusp()).constant == Rational(6));
  for (int k = 1; k <= 4; ++k) {
    auto r = verify_saito(normal_crossing(k));
    CHECK(r.ok);
    CHECK(r.constant == Rational(1));
  }
  for (const auto& d : all_catalog()) {
    INFO(d.name);
    auto r = verify_saito(d);
    CHECK(r.ok);
    CHECK(!r.constant.is_zero());
    CHECK(r.squarefree == logres::exact::SquarefreeVerdict::probably_squarefree);
  }
}

TEST_CASE("Sekiguchi determinant constant matches a cofactor expansion") {
  auto d = sekiguchi_b5();
  auto a = d.frame_matrix();
  // Expansion along the first row, written out by hand.
  auto det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
             a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
             a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  CHECK(det == d.f * Rational(-18));
  CHECK(verify_saito(d).constant == Rational(-18));
}

TEST_CASE("degenerate frame fails Saito") {
  auto d = cusp();
  d.frame[1].field = d.frame[0].field;
  d.frame[1].kind = FrameKind::w;
  auto r = verify_saito(d);
  CHECK(!r.ok);
  CHECK(r.det.is_zero());
}

TEST_CASE("non-reduced equation fails Saito") {
  auto d = normal_crossing(2);
  // det(z1 d1, z2 d2) = z1 z2 is not a multiple of the non-reduced z1^2.
  d.f = P(d, "z1^2");
  d.degree = 2;
  d.factors.clear();
  d.euler = {1, 1};
  d.frame[0].field = VectorField({P(d, "z1"), P(d, "0")});
  d.frame[1].field = VectorField({P(d, "0"), P(d, "z2")});
  auto r = verify_saito(d);
  CHECK(!r.ok);
}

TEST_CASE("frame brackets of the catalog") {
  auto c = cusp();
  CHECK(bracket(c.frame[0].field, c.frame[1].field) == c.frame[1].field);
  CHECK(bracket(c.frame[0].field, c.frame[0].field).is_zero());

  auto s = sekiguchi_b5();
  const auto &E = s.frame[0].field, &V = s.frame[1].field, &W = s.frame[2].field;
  CHECK(bracket(E, V) == V);
  CHECK(bracket(E, W) == Rational(2) * W);
  CHECK(bracket(V, W) == P(s, "24*z") * E + P(s, "6*y") * V + P(s, "-40*x") * W);

  auto b = borel2();
  CHECK(bracket(b.frame[0].field, b.frame[2].field) == b.frame[2].field);
  CHECK(bracket(b.frame[1].field, b.frame[2].field) == Rational(-1) * b.frame[2].field);

  auto g = g2();
  const auto &h = g.frame[idx(g, "Vh")].field, &f = g.frame[idx(g, "Vf")].field,
             &e = g.frame[idx(g, "Ve")].field;
  CHECK(bracket(h, f) == Rational(2) * f);
  CHECK(bracket(h, e) == Rational(-2) * e);
  CHECK(bracket(f, e) == h);
}

TEST_CASE("structure functions") {
  auto s = sekiguchi_b5();
  auto sf = structure_functions(s);
  CHECK(sf(1, 2, 0) == P(s, "24*z"));
  CHECK(sf(1, 2, 1) == P(s, "6*y"));
  CHECK(sf(1, 2, 2) == P(s, "-40*x"));
  auto b = borel2();
  auto bf = structure_functions(b);
  CHECK(bf(0, 2, 2) == P(b, "1"));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k) CHECK(bf(i, i, k).is_zero());
}

TEST_CASE("structure functions: expansion, antisymmetry, Jacobi, grading") {
  for (const auto& d : all_catalog()) {
    INFO(d.name);
    auto sf = structure_functions(d);
    const std::size_t n = d.n();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<WeightedPoly> c;
        for (std::size_t k = 0; k < n; ++k) {
          c.push_back(sf(i, j, k));
          CHECK(sf(i, j, k) == -sf(j, i, k));
          CHECK(sf(i, j, k).is_homogeneous_of(grade_of(d, i) + grade_of(d, j) - grade_of(d, k)));
        }
        CHECK(frame_combination(d, c) == bracket(d.frame[i].field, d.frame[j].field));
      }
    // sum over cyclic (i,j,k) of V_i(c_jk^l) + sum_m c_jk^m c_im^l = 0
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            WeightedPoly acc(d.weights);
            std::size_t t[3] = {i, j, k};
            for (int r = 0; r < 3; ++r) {
              std::size_t a = t[r], b = t[(r + 1) % 3], c = t[(r + 2) % 3];
              acc += d.frame[a].field.apply(sf(b, c, l));
              for (std::size_t m = 0; m < n; ++m) acc += sf(b, c, m) * sf(a, m, l);
            }
            CHECK(acc.is_zero());
          }
  }
}

TEST_CASE("vector field bracket is a Lie bracket") {
  oracle::Sampler s(21);
  Weights w{1, 2, 1};
  auto rnd = [&] {
    return VectorField({s.poly(w, 2, 3), s.poly(w, 2, 3), s.poly(w, 2, 3)});
  };
  for (int t = 0; t < 15; ++t) {
    auto a = rnd(), b = rnd(), c = rnd();
    Rational k = s.rational();
    CHECK(bracket(a, b) == Rational(-1) * bracket(b, a));
    CHECK(bracket(a + k * b, c) == bracket(a, c) + k * bracket(b, c));
    CHECK((bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))).is_zero());
  }
}

TEST_CASE("D4 frame is the differentiated group action") {
  // Oracle: for g(t) = exp(t X) acting on (u, v, w), d/dt at t = 0 of the
  // coordinates is X applied to each C^2 block. Torus parts scale one block.
  auto d = d4();
  auto coord = [&](std::size_t i) { return WeightedPoly::variable(d.weights, i); };
  auto action_field = [&](const std::array<std::array<int, 2>, 2>& x, std::array<int, 3> blocks) {
    std::vector<WeightedPoly> c(6, WeightedPoly(d.weights));
    for (int b = 0; b < 3; ++b) {
      if (!blocks[b]) continue;
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
          if (x[r][s]) c[2 * b + r] += coord(2 * b + s) * Rational(x[r][s]);
    }
    return VectorField(c);
  };
  std::array<std::array<int, 2>, 2> id{{{1, 0}, {0, 1}}}, h{{{1, 0}, {0, -1}}}, e{{{0, 1}, {0, 0}}},
      f{{{0, 0}, {1, 0}}};
  CHECK(d.frame[idx(d, "Ea")].field == action_field(id, {1, 0, 0}));
  CHECK(d.frame[idx(d, "Eb")].field == action_field(id, {0, 1, 0}));
  CHECK(d.frame[idx(d, "Ec")].field == action_field(id, {0, 0, 1}));
  CHECK(d.frame[idx(d, "Yh")].field == action_field(h, {1, 1, 1}));
  CHECK(d.frame[idx(d, "Ye")].field == action_field(e, {1, 1, 1}));
  CHECK(d.frame[idx(d, "Yf")].field == action_field(f, {1, 1, 1}));
  // Every sl2 generator annihilates f; each torus factor scales it by 2.
  for (const auto& nm : {"Yh", "Ye", "Yf"}) CHECK(d.frame[idx(d, nm)].field.apply(d.f).is_zero());
  for (const auto& nm : {"Ea", "Eb", "Ec"})
    CHECK(d.frame[idx(d, nm)].field.apply(d.f) == d.f * Rational(2));
}

TEST_CASE("dual logarithmic forms") {
  auto c = cusp();
  auto lf = dual_log_forms(c);
  CHECK(lf.c == Rational(6));
  // alpha = (1/6) dlog f, beta = (3x dy - 2y dx) / (6 f)
  CHECK(lf.numer(0, 0) == partial_derivative(c.f, 0));
  CHECK(lf.numer(0, 1) == partial_derivative(c.f, 1));
  CHECK(lf.numer(1, 0) == P(c, "-2*y"));
  CHECK(lf.numer(1, 1) == P(c, "3*x"));

  auto s = sekiguchi_b5();
  auto sl = dual_log_forms(s);
  struct Row {
    std::array<const char*, 3> num;
    int den;
  };
  std::array<Row, 3> table{{{{"y*(3*y^3 + 4*z^2)", "z*(16*x*z - 3*y^2)", "z^2 + 3*y^3 - 12*x*y*z"}, 3},
                            {{"y^2*z", "z*(4*x*y + 3*z)", "-y*(3*x*y + 2*z)"}, 6},
                            {{"2*y^3 + 3*z^2 - 4*x*y*z", "-(3*y*z + x*y^2 + 16*x^2*z)",
                              "12*x^2*y + 2*y^2 - x*z"},
                             9}}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(sl.numer(i, j) * Rational(table[i].den) == P(s, table[i].num[j]) * sl.c);

  auto nc = normal_crossing(3);
  auto nl = dual_log_forms(nc);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      // numer / f = dz_i / z_i
      auto expect = i == j ? exact_divide(nc.f, WeightedPoly::variable(nc.weights, i))
                           : WeightedPoly(nc.weights);
      CHECK(nl.numer(i, j) == expect);
    }
}

TEST_CASE("pairing identity across the catalog") {
  for (const auto& d : all_catalog()) {
    INFO(d.name);
    auto lf = dual_log_forms(d);
    auto a = d.frame_matrix();
    CHECK(lf.numer * a.transpose() == (lf.f * lf.c) * PolyMatrix::identity(d.n(), d.weights));
  }
}

TEST_CASE("dlog f expansion") {
  auto s = sekiguchi_b5();
  auto e = dlog_f_expansion(s);
  CHECK(e == std::vector<WeightedPoly>{P(s, "9"), P(s, "-96*x"), P(s, "-36*y")});
  auto c = cusp();
  CHECK(dlog_f_expansion(c) == std::vector<WeightedPoly>{P(c, "6"), P(c, "0")});
  auto nc = normal_crossing(3);
  for (const auto& v : dlog_f_expansion(nc)) CHECK(v == P(nc, "1"));
}

TEST_CASE("form structure equations") {
  auto s = sekiguchi_b5();
  auto eq = form_structure_equations(structure_functions(s));
  // d alpha = -24 z beta^gamma
  REQUIRE(eq[0].size() == 1);
  CHECK(eq[0][0].i == 1);
  CHECK(eq[0][0].j == 2);
  CHECK(eq[0][0].coeff == P(s, "-24*z"));
  // d beta = -alpha^beta - 6y beta^gamma
  REQUIRE(eq[1].size() == 2);
  CHECK((eq[1][0].i == 0 && eq[1][0].j == 1 && eq[1][0].coeff == P(s, "-1")));
  CHECK((eq[1][1].i == 1 && eq[1][1].j == 2 && eq[1][1].coeff == P(s, "-6*y")));
  // d gamma = -2 alpha^gamma + 40x beta^gamma
  REQUIRE(eq[2].size() == 2);
  CHECK((eq[2][0].i == 0 && eq[2][0].j == 2 && eq[2][0].coeff == P(s, "-2")));
  CHECK((eq[2][1].i == 1 && eq[2][1].j == 2 && eq[2][1].coeff == P(s, "40*x")));

  // cusp: d alpha = 0, d beta = (n-p-q) beta^alpha = -alpha^beta
  auto c = cusp();
  auto ce = form_structure_equations(structure_functions(c));
  CHECK(ce[0].empty());
  REQUIRE(ce[1].size() == 1);
  CHECK(ce[1][0].coeff == P(c, "-1"));

  // G2: d alpha_h = alpha_e ^ alpha_f, i.e. -alpha_f ^ alpha_e
  auto g = g2();
  auto ge = form_structure_equations(structure_functions(g));
  auto h = idx(g, "Vh"), f = idx(g, "Vf"), e = idx(g, "Ve");
  REQUIRE(ge[h].size() == 1);
  CHECK(ge[h][0].i == f);
  CHECK(ge[h][0].j == e);
  CHECK(ge[h][0].coeff == P(g, "-1"));
}

TEST_CASE("form structure equations agree with the exterior derivative") {
  // Oracle: differentiate xi^k = sum_j g_j / h dz_j directly, with h = c f:
  // d xi^k = sum_{a<b} (h (d_a g_b - d_b g_a) - (g_b d_a h - g_a d_b h)) / h^2 dz_a ^ dz_b,
  // then evaluate on (V_i, V_j) and compare with -c_ij^k after clearing h^2.
  for (const auto& d : {cusp(), sekiguchi_b5(), borel2(), g2()}) {
    INFO(d.name);
    auto lf = dual_log_forms(d);
    auto sf = structure_functions(d);
    auto a = d.frame_matrix();
    const std::size_t n = d.n();
    WeightedPoly h = lf.f * lf.c;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          WeightedPoly val(d.weights);
          for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
              const auto &gp = lf.numer(k, p), &gq = lf.numer(k, q);
              WeightedPoly omega = h * (partial_derivative(gq, p) - partial_derivative(gp, q)) -
                                   (gq * partial_derivative(h, p) - gp * partial_derivative(h, q));
              val += omega * (a(i, p) * a(j, q) - a(i, q) * a(j, p));
            }
          CHECK(val == -(sf(i, j, k) * h * h));
        }
  }
}

TEST_CASE("dpi coefficients") {
  auto s = sekiguchi_b5();
  auto t = compute_dpi(s);
  CHECK(t.p(0, 0) == Rational(1, 9));
  CHECK(t.value[0][1] == P(s, "-32/3*x"));
  CHECK(t.value[0][2] == P(s, "-4*y"));
  auto c = cusp();
  CHECK(compute_dpi(c).value[0][1].is_zero());
  auto b = borel2();
  auto bt = compute_dpi(b);
  CHECK(bt.p == RationalMatrix{{Rational(1, 2), 0}, {Rational(-1, 2), Rational(1, 2)}});
  CHECK(bt.value[0][2].is_zero());
  CHECK(bt.value[1][2].is_zero());
  for (const auto& d : all_catalog()) {
    INFO(d.name);
    auto dt = compute_dpi(d);
    auto tor = d.indices(FrameKind::toral);
    for (std::size_t a = 0; a < tor.size(); ++a)
      for (std::size_t bb = 0; bb < tor.size(); ++bb)
        CHECK(dt.value[a][tor[bb]] == WeightedPoly::constant(d.weights, a == bb ? 1 : 0));
  }
}

TEST_CASE("adapted algebroid constants") {
  auto s = sekiguchi_b5();
  auto ad = algebroid_data(s, structure_functions(s));
  CHECK(ad.n[0] == std::vector<Rational>{1, 2});
  CHECK(ad.alpha[0][1][0] == P(s, "24*z"));
  CHECK(ad.gamma[0][1][0] == P(s, "6*y"));
  auto g = g2();
  auto gd = algebroid_data(g, structure_functions(g));
  CHECK(gd.s[0][1][1] == Rational(2));
  CHECK(gd.s[1][2][0] == Rational(1));
  auto d = d4();
  auto dd = algebroid_data(d, structure_functions(d));
  CHECK(dd.euler == std::vector<int>{1, 1, 1});

  auto bad = sekiguchi_b5();
  bad.frame[1].grade = 3;
  CHECK_THROWS_AS(algebroid_data(bad, structure_functions(bad)), DivisorError);
}

TEST_CASE("catalog names") {
  CHECK(catalog("normal_crossing:3").n() == 3);
  CHECK(catalog("normal_crossing(4)").n() == 4);
  CHECK(catalog("normal_crossing").n() == 2);
  CHECK_THROWS_AS(catalog("e8"), DivisorError);
  CHECK_THROWS_AS(catalog("normal_crossing(x)"), DivisorError);
}
