#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "lie_fixtures.hpp"
#include "polyarith/cli.hpp"

using namespace polyarith;
using nlohmann::json;

namespace {

struct Run {
  int rc;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "polyarith");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int rc = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(POLYARITH_SAMPLES_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "polyarith_cli_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << content;
  return path.string();
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

const char* c2_spec = R"({"presentation": {"generators": ["s"], "relators": [[["s", 2]]]},
  "action": {"rank": 1, "matrices": {"s": {"rows": 1, "cols": 1, "entries": [["-1"]]}}}})";

}  // namespace

TEST_CASE("pell report") {
  Run r = run_cli({"pell", "3"});
  REQUIRE(r.rc == 0);
  json report = json::parse(r.out);
  CHECK(report["results"] == json::parse(R"({"a":2,"b":1,"d":3})"));
  CHECK(report["command"] == "pell");
  CHECK(report["version"] == POLYARITH_VERSION);
  CHECK(report["inputs_digest"].get<std::string>().size() == 64);
  CHECK_FALSE(report.contains("timestamp"));

  json big = json::parse(run_cli({"pell", "61"}).out)["results"];
  CHECK(big["a"] == 1766319049);
  CHECK(big["b"] == 226153980);
}

TEST_CASE("reports are byte-identical across runs") {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"teob", "3"}, {"gamma-epsilon", "5"}, {"h1", sample("s3_rank2.json")},
        {"lie-cohomology", sample("heisenberg3.json"), "--automorphism", sample("heisenberg3_scaling.json")},
        {"teob", "2", "--pretty"}}) {
    Run a = run_cli(args), b = run_cli(args);
    REQUIRE(a.rc == 0);
    CHECK(a.out == b.out);
  }
  Run stamped = run_cli({"pell", "2", "--timestamps"});
  REQUIRE(stamped.rc == 0);
  CHECK(json::parse(stamped.out).contains("timestamp"));
}

TEST_CASE("inputs digest depends on content, not on formatting or path") {
  std::string compact = write_temp("c2_compact.json", json::parse(c2_spec).dump());
  std::string spaced = write_temp("c2_spaced.json", json::parse(c2_spec).dump(4));
  auto digest = [](const std::string& path) { return json::parse(run_cli({"h1", path}).out)["inputs_digest"]; };
  CHECK(digest(compact) == digest(spaced));
  CHECK(digest(compact) != digest(sample("s3_rank2.json")));
  CHECK(json::parse(run_cli({"teob", "3"}).out)["inputs_digest"] !=
        json::parse(run_cli({"teob", "3", "--seed", "2"}).out)["inputs_digest"]);
}

TEST_CASE("teob --pretty ends with the classification") {
  Run r = run_cli({"teob", "3", "--pretty"});
  REQUIRE(r.rc == 0);
  std::string out = r.out;
  while (!out.empty() && out.back() == '\n') out.pop_back();
  CHECK(out.substr(out.rfind('\n') + 1) == "classification: FailsNecessaryCondition");
  CHECK(r.out.find("hyperbolic_factor: x^2 - 4*x + 1") != std::string::npos);

  json j = json::parse(run_cli({"teob", "3"}).out)["results"];
  CHECK(j["classification"] == "FailsNecessaryCondition");
  CHECK(j["order"].is_null());
  CHECK(j["compatibility"]["failures"] == 0);
  CHECK(j["compatibility"]["checks"] == 3 * 4 * 50);
  CHECK(j["unipotent_part"]["entries"][0] == json::parse(R"(["1","-2","0","0"])"));
  CHECK(j["resolved_g"] == 3);
}

TEST_CASE("jordan on the identity") {
  Run r = run_cli({"jordan", sample("identity3.json")});
  REQUIRE(r.rc == 0);
  json res = json::parse(r.out)["results"];
  json id = io::matrix_to_json(RationalMatrix::identity(3));
  CHECK(res["semisimple_part"] == id);
  CHECK(res["unipotent_part"] == id);
  CHECK(res["min_poly"] == "x - 1");
}

TEST_CASE("group commands on samples") {
  json h = json::parse(run_cli({"h1", sample("c2_sign.json")}).out)["results"];
  CHECK(h["group"] == "Z/2");
  CHECK(h["free_rank"] == 0);

  json der = json::parse(run_cli({"derivations", sample("gamma_epsilon_d3.json")}).out)["results"];
  CHECK(der["rank"] == 4);

  json act = json::parse(run_cli({"der-action", sample("gamma_epsilon_d3.json"), "--element", "A t A"}).out)["results"];
  CHECK(act["element"] == "t");
  IntegerMatrix m = io::parse_integer_matrix(act["matrix"], "");
  CHECK(abs(determinant(m)) == 1);
  CHECK(m * m == IntegerMatrix::identity(4));

  json units =
      json::parse(run_cli({"equivariant-units", sample("gamma_epsilon_d3.json"), "--bound", "10"}).out)["results"];
  CHECK(units["count"] == 4);

  json arith = json::parse(run_cli({"arith-check", sample("shear_times_cat.json")}).out)["results"];
  CHECK(arith["classification"] == "FailsNecessaryCondition");
}

TEST_CASE("Lie commands on samples") {
  json lie = json::parse(run_cli({"lie-cohomology", sample("heisenberg3.json"), "--invariants",
                                  sample("heisenberg3_torus.json")})
                             .out)["results"];
  CHECK(lie["betti"] == json::parse("[1,2,2,1]"));
  CHECK(lie["euler_characteristic"] == 0);
  CHECK(lie["poincare_duality"] == true);
  CHECK(lie["nilpotency_class"] == 2);
  CHECK(lie["invariants"]["betti"] == json::parse("[1,0,0,1]"));

  json inv = json::parse(run_cli({"koszul-invariants", sample("heisenberg3.json"), sample("heisenberg3_torus.json")})
                             .out)["results"];
  CHECK(inv["betti"] == json::parse("[1,0,0,1]"));
  CHECK(inv["agree"] == true);
  CHECK(inv["complex_betti"] == json::parse("[1,2,2,1]"));

  json fil = json::parse(run_cli({"lie-cohomology", sample("filiform4.json")}).out)["results"];
  CHECK(fil["betti"] == json::parse("[1,2,2,2,1]"));
}

TEST_CASE("exit codes") {
  SECTION("usage and malformed input exit 1") {
    CHECK(run_cli({}).rc == 1);
    CHECK(run_cli({"frobnicate"}).rc == 1);
    CHECK(run_cli({"pell"}).rc == 1);
    CHECK(run_cli({"pell", "three"}).rc == 1);
    CHECK(run_cli({"h1", "/nonexistent/spec.json"}).rc == 1);
    CHECK(run_cli({"h1", write_temp("broken.json", "{\"presentation\": ")}).rc == 1);
    CHECK(run_cli({"der-action", sample("gamma_epsilon_d3.json"), "--element", "B"}).rc == 1);

    json bad = json::parse(c2_spec);
    bad["action"]["matrices"]["s"]["entries"][0][0] = 0.5;
    Run r = run_cli({"h1", write_temp("float.json", bad.dump())});
    CHECK(r.rc == 1);
    CHECK(r.err.find("/action/matrices/s/entries/0/0") != std::string::npos);

    json missing = json::parse(c2_spec);
    missing["action"].erase("rank");
    r = run_cli({"h1", write_temp("missing.json", missing.dump())});
    CHECK(r.rc == 1);
    CHECK(r.err.find("/action/rank") != std::string::npos);

    r = run_cli({"lie-cohomology", write_temp("lie_bad.json", R"({"dim": 3, "brackets": [{"i": 2, "j": 1, "k": 3, "c": "1"}]})")});
    CHECK(r.rc == 1);
    CHECK(r.err.find("/brackets/0/j") != std::string::npos);
    r = run_cli({"lie-cohomology", write_temp("lie_range.json", R"({"dim": 3, "brackets": [{"i": 1, "j": 2, "k": 4, "c": "1"}]})")});
    CHECK(r.rc == 1);
    CHECK(r.err.find("/brackets/0/k") != std::string::npos);
    CHECK(run_cli({"arith-check", sample("rational_matrix.json")}).rc == 1);
  }
  SECTION("precondition failures exit 2") {
    CHECK(run_cli({"pell", "4"}).rc == 2);
    CHECK(run_cli({"teob", "1"}).rc == 2);
    CHECK(run_cli({"lie-cohomology", sample("bad_jacobi.json")}).rc == 2);
    CHECK(run_cli({"arith-check", write_temp("det2.json", R"({"rows":2,"cols":2,"entries":[["2","0"],["0","1"]]})")}).rc == 2);
    CHECK(run_cli({"jordan", write_temp("nonsquare.json", R"({"rows":1,"cols":2,"entries":[["1","0"]]})")}).rc == 2);
    json wrong = json::parse(c2_spec);
    wrong["presentation"]["relators"] = json::parse(R"([[["s", 1]]])");
    CHECK(run_cli({"h1", write_temp("relator.json", wrong.dump())}).rc == 2);
    CHECK(run_cli({"lie-cohomology", sample("heisenberg3.json"), "--automorphism",
                   write_temp("not_auto.json", R"({"rows":3,"cols":3,"entries":[["2","0","0"],["0","1","0"],["0","0","1"]]})")})
              .rc == 2);
    setenv("POLYARITH_MAX_DIM", "2", 1);
    CHECK(run_cli({"lie-cohomology", sample("heisenberg3.json")}).rc == 2);
    CHECK(run_cli({"h1", sample("s3_rank2.json")}).rc == 0);
    CHECK(run_cli({"derivations", sample("gamma_epsilon_d3.json")}).rc == 2);
    unsetenv("POLYARITH_MAX_DIM");
  }
  SECTION("help exits 0") {
    Run r = run_cli({"--help"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("koszul-invariants") != std::string::npos);
  }
}

TEST_CASE("JSON round trips") {
  json ge = json::parse(run_cli({"gamma-epsilon", "7"}).out)["results"];
  io::GroupSpec spec = io::parse_group(ge, "", 14);
  json again = io::group_to_json(spec);
  for (const char* key : {"presentation", "action", "engine"}) CHECK(again[key] == ge[key]);
  CHECK(io::parse_group(again, "", 14) == spec);
  CHECK(ge["epsilon"] == json::parse(R"({"a":8,"b":3,"d":7})"));

  for (const char* name : {"c2_sign.json", "s3_rank2.json", "gamma_epsilon_d3.json"}) {
    io::GroupSpec s = io::parse_group(read_json(sample(name)), "", 14);
    CHECK(io::parse_group(io::group_to_json(s), "", 14) == s);
  }

  for (const auto& a : fixtures::nilpotent_suite()) {
    INFO(a.name);
    CHECK(io::parse_lie(io::lie_to_json(a.lie), "") == a.lie);
  }

  RationalMatrix m{{Rational(-3, 7), 0}, {Rational(5), Rational(1, 2)}};
  json mj = io::matrix_to_json(m);
  CHECK(mj["entries"][0][0] == "-3/7");
  CHECK(io::parse_rational_matrix(mj, "") == m);
  CHECK(io::parse_rational_matrix(json::parse(R"({"rows":1,"cols":2,"entries":[[3,"-4/6"]]})"), "") ==
        RationalMatrix{{Rational(3), Rational(-2, 3)}});
}
