#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "logres/cli/cli.hpp"

using namespace logres;
using io::json;

namespace {

std::string data(const std::string& name) { return std::string(LOGRES_DATA_DIR) + "/" + name; }

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  auto r = run(args);
  INFO(r.err);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

std::string temp_file(const std::string& name, const std::string& body) {
  std::string path = std::string(LOGRES_BINARY_DIR) + "/" + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("catalog listing and export") {
  auto r = run({"catalog"});
  CHECK(r.code == 0);
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("sekiguchi_b5"));
  auto j = run_json({"catalog", "--catalog", "borel2"});
  CHECK(io::divisor_from(j) == divisor::borel2());
}

TEST_CASE("verify-divisor on sekiguchi_b5") {
  auto j = run_json({"verify-divisor", "--catalog", "sekiguchi_b5"});
  CHECK(j["ok"] == true);
  CHECK(j["degree"] == 9);

  // Cofactor expansion of the (E, V, W) coefficient matrix written out by hand.
  std::vector<std::string> n{"x", "y", "z"};
  exact::Weights w{1, 2, 3};
  auto P = [&](const char* s) { return exact::parse_poly(s, n, w); };
  auto a = P("x"), b = P("2*y"), c = P("3*z");
  auto d = P("2*y"), e = P("-24*x*y + 2*z"), f = P("-32*x*z - 2*y^2");
  auto g = P("3*z"), h = P("-9*y^2"), i = P("-12*y*z");
  auto det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
  auto F = P("x*y^4 + y^3*z + z^3");
  auto q = exact::try_divide(det, F);
  REQUIRE(q);
  REQUIRE(q->is_constant());
  CHECK(j["constant"] == q->constant_term().str());
  CHECK(j["constant"] == "-18");
  CHECK(j["euler_f"] == (F * exact::Rational(9)).to_string(n));
}

TEST_CASE("emit-moduli on the cusp") {
  auto j = run_json({"emit-moduli", "--catalog", "cusp", "--residue", data("S01.json")});
  CHECK(j["summary"]["dim_U_F"] == 2);
  CHECK(j["summary"]["dim_W2"] == 2);
  auto sys = io::polysystem_from(j);
  CHECK(sys.coordinates.size() == 4);

  auto out = std::string(LOGRES_BINARY_DIR) + "/cusp_system.json";
  auto r = run({"emit-moduli", "--catalog", "cusp", "--residue", data("S01.json"), "--output", out, "--format", "json"});
  REQUIRE(r.code == 0);
  auto written = io::read_file(out);
  CHECK(io::polysystem_from(written) == sys);
  CHECK(io::dump(written) == r.out);
}

TEST_CASE("emit-moduli with the sekiguchi ansatz") {
  std::vector<std::string> args{"emit-moduli",  "--catalog", "sekiguchi_b5", "--residue", data("S01.json"),
                                "--ansatz", data("sekiguchi_ansatz.json")};
  auto r = run(args);
  CHECK(r.code == 0);
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("INCONSISTENT"));
  args.push_back("--strict");
  CHECK(run(args).code == 1);
  args.pop_back();
  auto j = run_json(args);
  const auto& res = j["restriction"];
  CHECK(res["equations"].size() == 5);
  CHECK(res["inconsistent"] == true);
  std::map<std::string, std::string> forced;
  for (const auto& s : res["determined"]) forced[s["variable"]] = s["value"];
  CHECK(forced == std::map<std::string, std::string>{{"a22", "-32/3"}, {"c22", "0"}, {"d", "1"}, {"f22", "-4"}});
}

TEST_CASE("residue-space reports") {
  auto j = run_json({"residue-space", "--catalog", "g2", "--residue", data("g2_sl2.json")});
  CHECK(j["residue_ok"] == true);
  CHECK(j["W2"]["dim_per_slot"] == 1);
  auto nc = run_json({"residue-space", "--catalog", "normal_crossing(2)", "--residue", data("nc2_S01.json")});
  CHECK(nc["W2"]["slots"] == 2);

  auto bad = temp_file("nilpotent_residue.json", R"({"s": [[["0","1"],["0","0"]]]})");
  auto r = run({"residue-space", "--catalog", "cusp", "--residue", bad});
  CHECK(r.code == 0);
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("residue rejected"));
  CHECK(run({"residue-space", "--catalog", "cusp", "--residue", bad, "--strict"}).code == 1);
}

TEST_CASE("check-flat and check-point verdicts") {
  CHECK(run({"check-flat", "--connection", data("cusp_connection.json"), "--strict"}).code == 0);
  auto bent = temp_file("bent.json", R"({"divisor": "cusp",
    "omega": [[["0","0"],["0","1"]], [["0","0"],["1","0"]]]})");
  auto r = run({"check-flat", "--connection", bent});
  CHECK(r.code == 0);
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("NOT flat"));
  CHECK(run({"check-flat", "--connection", bent, "--strict"}).code == 1);

  std::vector<std::string> args{"check-point", "--catalog", "sekiguchi_b5", "--residue", data("S01.json"),
                                "--point", data("sekiguchi_point.json")};
  auto j = run_json(args);
  CHECK(j["in_space"] == true);
  CHECK(j["flat"] == false);
  CHECK(j["emitted_agrees"] == true);
  args.push_back("--strict");
  CHECK(run(args).code == 1);
}

TEST_CASE("jordan decomposition command") {
  auto j = run_json({"jordan", "--mode", "multiplicative", "--matrix", data("J.json")});
  CHECK(io::matrix_from(j["S"], "") == exact::RationalMatrix::identity(2));
  CHECK(io::matrix_from(j["U"], "") == io::matrix_from(io::read_file(data("J.json")), ""));
  auto add = run_json({"jordan", "--matrix", data("J.json")});
  CHECK(io::matrix_from(add["N"], "") == exact::RationalMatrix::unit(2, 0, 1));
  auto singular = temp_file("singular.json", R"([["0","1"],["0","0"]])");
  CHECK(run({"jordan", "--mode", "multiplicative", "--matrix", singular}).code == 2);
}

TEST_CASE("malformed input exits with 2") {
  auto broken = temp_file("broken.json", "{\n  \"s\": [[[\"0\", \"0\"],\n   [\"0\" \"1\"]]]\n}\n");
  auto r = run({"residue-space", "--catalog", "cusp", "--residue", broken});
  CHECK(r.code == 2);
  CHECK_THAT(r.err, Catch::Matchers::ContainsSubstring("broken.json:3:"));
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify-divisor"}).code == 2);
  CHECK(run({"verify-divisor", "--catalog", "cusp", "--divisor", broken}).code == 2);
  CHECK(run({"verify-divisor", "--catalog", "no_such"}).code == 2);
  CHECK(run({"emit-moduli", "--catalog", "cusp"}).code == 2);
  CHECK(run({"verify-divisor", "--catalog", "cusp", "--format", "yaml"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("identical invocations give identical machine blocks") {
  const std::vector<std::vector<std::string>> suite = {
      {"verify-divisor", "--catalog", "sekiguchi_b5", "--seed", "7"},
      {"frame-info", "--catalog", "g2"},
      {"residue-space", "--catalog", "cusp", "--residue", data("S01.json")},
      {"emit-moduli", "--catalog", "sekiguchi_b5", "--residue", data("S01.json")},
  };
  for (auto args : suite) {
    args.push_back("--format");
    args.push_back("json");
    auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}
