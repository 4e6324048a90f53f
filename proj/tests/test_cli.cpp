// Command line behaviour, JSON round trips and the fixture runner.
#include "doctest.h"
#include "helpers.hpp"

#include "gkz/fixtures.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace gkz;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run gkz_cli(const std::string &args, const std::string &env = {}) {
  std::string cmd = env + (env.empty() ? "" : " ") + GKZ_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
  Run r;
  FILE *p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
    r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / ("gkz_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string write_input(const std::string &name, const std::string &text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

const char *E46 = R"({"matrix": [[1,0,1],[0,2,1]], "gamma": ["0","0"]})";
const char *E54 = R"({"matrix": [[1,0,0,1],[0,1,0,1],[0,0,1,-1]], "gamma": ["0","0","0"]})";

} // namespace

TEST_CASE("sets prints the one-dimensional sres figure") {
  auto in = write_input("a23.json", R"({"matrix": [[2, 3]]})");
  Run r = gkz_cli("sets sres --box=-6:6 --step 1 " + in);
  CHECK(r.code == 0);
  CHECK(r.out.find("######.#.....") != std::string::npos);
  CHECK(r.out.find("true at: -6 -5 -4 -3 -2 -1 1\n") != std::string::npos);
  Run j = gkz_cli("--json sets sres --box=-6:6 " + in);
  REQUIRE(j.code == 0);
  auto g = io::read_grid(io::json::parse(j.out));
  CHECK(g.cells.size() == 13);
}

TEST_CASE("faces of the identity matrix") {
  for (int n = 1; n <= 4; ++n) {
    std::string m = "[";
    for (int i = 0; i < n; ++i) {
      m += i ? ",[" : "[";
      for (int j = 0; j < n; ++j)
        m += std::string(j ? "," : "") + (i == j ? "1" : "0");
      m += "]";
    }
    m += "]";
    auto in = write_input("id.json", "{\"matrix\": " + m + "}");
    Run r = gkz_cli("--json faces " + in);
    REQUIRE(r.code == 0);
    CHECK(io::json::parse(r.out).at("faces").size() == (1u << n));
  }
}

TEST_CASE("factors dmod on the non-normal example") {
  auto in = write_input("e46.json", E46);
  Run r = gkz_cli("--json factors dmod " + in);
  REQUIRE(r.code == 0);
  auto j = io::json::parse(r.out);
  CHECK(j.at("certification") == "isomorphism");
  CHECK(j.at("normal") == false);
  CHECK(j.at("levels").at(1).at("factors").size() == 2);
  // standard input works too
  Run s = gkz_cli("--json factors dmod < " + in);
  CHECK(s.code == 0);
  CHECK(s.out == r.out);
}

TEST_CASE("json output round-trips through the decoders") {
  for (const char *text : {E46, E54}) {
    auto in = io::parse_input_text(text);
    Configuration A(in.matrix);
    auto d = io::report(dmod_report(A, *in.gamma));
    CHECK(io::report(io::read_report(io::json::parse(d.dump()))) == d);
    auto p = io::report(perverse_report(A, *in.gamma));
    CHECK(io::report(io::read_report(io::json::parse(p.dump()))) == p);
    auto c = io::comparison(rh_compare(A, *in.gamma));
    CHECK(io::comparison(io::read_comparison(io::json::parse(c.dump()))) == c);
  }
  ResonanceEngine E{Configuration(test::rows({{1, 1, 0}, {0, 1, 2}}))};
  DresBounds b;
  b.K_max = 2;
  for (auto s : {RegionSet::Sres, RegionSet::Dres, RegionSet::Wres, RegionSet::DRes}) {
    auto g = io::grid(E.region_scan(s, {{Rat(-2), Rat(2)}, {Rat(-2), Rat(2)}}, Rat(1, 2), b));
    CHECK(io::grid(io::read_grid(io::json::parse(g.dump()))) == g);
  }
  auto g = io::grid(region_scan(Configuration(test::rows({{2, 0}, {0, 0}})), RegionSet::Res,
                                {{Rat(0), Rat(1)}, {Rat(0), Rat(1)}}, Rat(1)));
  CHECK(g.at("cells").at(1).at("result").is_null()); // (0,1) lies outside QA
  CHECK(io::grid(io::read_grid(g)) == g);
  LocalSystemClass c;
  c.face = {1};
  c.representative = test::rv({"1/3", "0"});
  c.canonical = c.representative;
  auto l = io::local_system(c);
  CHECK(l.at("order") == "infinite");
  CHECK(io::local_system(io::read_local_system(l)) == l);
}

TEST_CASE("output is byte-identical across runs") {
  auto in = write_input("e54.json", E54);
  for (const char *cmd : {"--json factors compare", "factors perverse", "--json resonance", "--json normality"}) {
    Run a = gkz_cli(std::string(cmd) + " " + in), b = gkz_cli(std::string(cmd) + " " + in);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("exit codes") {
  auto good = write_input("good.json", E46);
  CHECK(gkz_cli("faces " + good).code == 0);
  CHECK(gkz_cli("faces " + write_input("bad.json", "{\"matrix\": [[1,2],[3]]}")).code == 2);
  CHECK(gkz_cli("faces " + write_input("notjson.json", "matrix")).code == 2);
  CHECK(gkz_cli("resonance " + write_input("nog.json", R"({"matrix": [[1]]})")).code == 2);
  CHECK(gkz_cli("resonance " + write_input("badg.json", R"({"matrix": [[1]], "gamma": ["1/0"]})")).code == 2);
  CHECK(gkz_cli("resonance " + write_input("len.json", R"({"matrix": [[1]], "gamma": ["1", "2"]})")).code == 2);
  CHECK(gkz_cli("sets nosuch --box=0:1 " + good).code == 2);
  CHECK(gkz_cli("sets sres --box=0:1 " + good).code == 2); // one axis for two rows
  CHECK(gkz_cli("factors sideways " + good).code == 2);
  CHECK(gkz_cli("frobnicate " + good).code == 2);
  CHECK(gkz_cli("faces /nonexistent/input.json").code == 2);
  CHECK(gkz_cli("faces " + good, "GKZ_BUDGET=zero").code == 2);

  auto e54 = write_input("e54.json", E54);
  CHECK(gkz_cli("factors dmod " + e54, "GKZ_BUDGET=5").code == 3);
  CHECK(gkz_cli("factors dmod " + e54, "GKZ_BUDGET=100000").code == 0);

  auto bounded = write_input("bounded.json", R"({"matrix": [[2,3]], "gamma": ["5"], "bounds": {"K_max": 2}})");
  Run loose = gkz_cli("--json resonance " + bounded);
  CHECK(loose.code == 0);
  CHECK(io::json::parse(loose.out).at("membership").at("dres").at("verdict") == "false_up_to_bounds");
  CHECK(gkz_cli("--strict resonance " + bounded).code == 4);
  CHECK(gkz_cli("--strict resonance " + good).code == 0);
  auto exhaustive = write_input("exh.json", R"({"matrix": [[2,3]], "gamma": ["5"]})");
  CHECK(gkz_cli("--strict resonance " + exhaustive).code == 0);
}

TEST_CASE("shipped fixtures pass") {
  auto rs = run_fixtures(default_fixture_dir());
  REQUIRE(rs.size() == 4);
  for (const auto &r : rs) {
    INFO(r.name);
    for (const auto &d : r.diffs)
      MESSAGE(d);
    CHECK(r.passed);
    CHECK(r.checks > 0);
  }
  Run v = gkz_cli("verify --fixtures");
  CHECK(v.code == 0);
  CHECK(v.out.find("PASS example-5.4") != std::string::npos);
}

TEST_CASE("filter runs one fixture") {
  auto rs = run_fixtures(default_fixture_dir(), "example-4.6");
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].name == "example-4.6");
  Run v = gkz_cli("--json verify --fixtures --filter example-4.6");
  REQUIRE(v.code == 0);
  auto j = io::json::parse(v.out);
  CHECK(j.at("fixtures").size() == 1);
  CHECK_FALSE(j.contains("suite"));
}

TEST_CASE("corrupted fixtures fail with a diff") {
  fs::path dir = scratch() / "corrupt";
  fs::create_directories(dir);
  auto load = [](const std::string &name) {
    std::ifstream f(fs::path(default_fixture_dir()) / (name + ".json"));
    return io::json::parse(f);
  };

  auto f = load("example-4.6");
  f["checks"][3]["expect"]["certification"] = "semisimple-certified";
  std::ofstream(dir / "example-4.6.json") << f.dump(2);
  auto g = load("example-3.8-1");
  g["checks"][0]["true_points"].push_back(io::json::array({"0"}));
  g["checks"][8]["expect"]["facets"][0]["functional"][0] = "2";
  std::ofstream(dir / "example-3.8-1.json") << g.dump(2);
  std::ofstream(dir / "broken.json") << "{ not json";

  auto rs = run_fixtures(dir.string());
  REQUIRE(rs.size() == 3);
  CHECK_FALSE(rs[0].passed); // broken
  CHECK(rs[0].diffs.at(0).find("not valid JSON") != std::string::npos);

  REQUIRE(rs[1].name == "example-3.8-1");
  CHECK_FALSE(rs[1].passed);
  REQUIRE(rs[1].diffs.size() == 2);
  CHECK(rs[1].diffs[0] == "checks[0].true_points: expected (0,) true, got not true");
  CHECK(rs[1].diffs[1] == "checks[8].expect.facets[0].functional[0]: expected \"2\", got \"1\"");

  REQUIRE(rs[2].name == "example-4.6");
  REQUIRE(rs[2].diffs.size() == 1);
  CHECK(rs[2].diffs[0] == "checks[3].expect.certification: expected \"semisimple-certified\", got \"isomorphism\"");

  Run v = gkz_cli("verify --fixtures --dir " + dir.string());
  CHECK(v.code == 1);
  CHECK(v.out.find("FAIL example-4.6") != std::string::npos);
  CHECK(v.out.find("expected \"semisimple-certified\"") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("subset diff rules") {
  std::vector<std::string> out;
  diff_subset(io::json::parse(R"({"a": [1, {"b": "1/2"}]})"), io::json::parse(R"({"a": [1, {"b": "2/4", "c": 0}], "z": 1})"),
              "$", out);
  CHECK(out.empty());
  diff_subset(io::json::parse(R"({"a": [1]})"), io::json::parse(R"({"a": [1, 2]})"), "$", out);
  diff_subset(io::json::parse(R"({"q": 1})"), io::json::parse(R"({})"), "$", out);
  diff_subset(io::json::parse(R"(["3"])"), io::json::parse(R"([3])"), "$", out);
  REQUIRE(out.size() == 2);
  CHECK(out[0] == "$.a: expected length 1, got 2 [1,2]");
  CHECK(out[1] == "$.q: expected 1, got nothing");
}
