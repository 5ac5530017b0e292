#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run fnx(const std::string& args) {
  const std::string cmd = std::string(FNX_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(FNX_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/fnx_cli_test_" + name;
  std::ofstream(path) << content;
  return path;
}

bool has(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

const char* kCircle =
    R"({"n": 2, "e": [1, 1], "e0": "-3/8", "a": [[2, 0], [0, 2]], "c": [-1, -1]})";
const char* kSystem =
    R"({"n": 2, "support": [[0,0],[1,0],[0,1],[2,1],[1,2]], "coeffs": [[-1, 2, 1, -3, -1], [-2, 1, 3, -2, 1]]})";

}  // namespace

TEST_CASE("bounds table") {
  auto r = fnx("bounds --n 2 --k 2");
  CHECK(r.code == 0);
  for (const char* v : {"| 5184 |", "| 20 |", "| 15 |", "| 4 |"}) CHECK(has(r.out, v));
  auto j = fnx("--json bounds --n 2 --k 3");
  CHECK(j.code == 0);
  auto parsed = nlohmann::json::parse(j.out);
  bool saw100 = false;
  for (const auto& row : parsed["bounds"]) saw100 |= row["cap"] == "100";
  CHECK(saw100);
  auto csv = fnx("bounds --n 1:3 --k 1:2 --csv");
  CHECK(csv.code == 0);
  CHECK(has(csv.out, "n,k,formula"));
  CHECK(fnx("bounds --n x").code == 2);
}

TEST_CASE("bijection on the worked example") {
  auto r = fnx("verify-bijection " + data("quad.json"));
  CHECK(r.code == 0);
  CHECK(has(r.out, "counts 1 = 1"));
  auto j = nlohmann::json::parse(fnx("--json verify-bijection " + data("quad.json")).out);
  CHECK(j["source_count"] == 1);
  CHECK(j["gale_count"] == 1);
  CHECK(j["ok"] == true);
}

TEST_CASE("input errors exit with 2") {
  CHECK(fnx("count missing.json").code == 2);
  CHECK(fnx("count " + temp_file("bad.json", "{\"n\": 2")).code == 2);
  CHECK(fnx("count --method bogus " + data("quad.json")).code == 2);
  CHECK(fnx("frobnicate").code == 2);
  CHECK(fnx("").code == 2);
  CHECK(fnx("sweep --suite other").code == 2);
  CHECK(fnx("sweep --only 11").code == 2);
  CHECK(fnx("kappa " + temp_file("notnormal.json", R"({"n": 1, "terms": [{"exp": [2], "coeff": 1}]})")).code == 2);
}

TEST_CASE("count, gale, faces and rolle") {
  const std::string sys = temp_file("sys.json", kSystem);
  auto c = nlohmann::json::parse(fnx("--json count " + data("quad.json")).out);
  CHECK(c["count"] == 1);
  CHECK(c["certified"] == true);
  auto nw = nlohmann::json::parse(fnx("--json count --method newton " + data("quad.json")).out);
  CHECK(nw["count"] == 1);
  CHECK(nw["certified"] == false);

  auto g = fnx("gale " + data("quad.json"));
  CHECK(g.code == 0);
  CHECK(has(g.out, "3 - 2 y1 > 0"));
  auto gj = nlohmann::json::parse(fnx("--json gale " + sys).out);
  CHECK(gj["A"].size() == 4);

  auto f = nlohmann::json::parse(fnx("--json faces " + sys).out);
  CHECK(f["phi"] == nlohmann::json::array({4, 4}));
  for (const auto& chk : f["checks"]) CHECK(chk["holds"] == true);

  const std::string cube = temp_file("cube.json", R"({"forms": [[1,-1,0,0],[1,0,-1,0],[1,0,0,-1],[0,1,0,0],[0,0,1,0],[0,0,0,1]]})");
  auto cj = nlohmann::json::parse(fnx("--json faces " + cube).out);
  CHECK(cj["phi"] == nlohmann::json::array({8, 12, 6}));

  auto rr = nlohmann::json::parse(fnx("--json rolle report " + sys).out);
  CHECK(rr["total"] == "14");
  auto rc = fnx("rolle report " + temp_file("circle.json", kCircle));
  CHECK(rc.code == 0);
  CHECK(has(rc.out, "compact components: <= 5"));
  CHECK(fnx("rolle").code == 2);
}

TEST_CASE("kappa modes") {
  auto t = fnx("kappa --n 2 --k 2");
  CHECK(t.code == 0);
  CHECK(has(t.out, "| best | | 5 |"));
  auto i = nlohmann::json::parse(fnx("--json kappa " + temp_file("circle2.json", kCircle)).out);
  CHECK(i["components"]["kappa_estimate"] == 1);
  CHECK(i["components"]["critical_count"] == 2);
  CHECK(i["components"]["certified"] == false);
}

TEST_CASE("sweep subset and determinism") {
  auto a = fnx("sweep --only 1 --only 3 --seed 7");
  CHECK(a.code == 0);
  CHECK(has(a.out, "criterion 1 PASS"));
  CHECK(has(a.out, "criterion 3 PASS"));
  auto b = fnx("sweep --only 1 --only 3 --seed 7");
  CHECK(a.out == b.out);
  const std::string sys = temp_file("sys2.json", kSystem);
  CHECK(fnx("--json --seed 3 rolle report " + sys).out == fnx("--json --seed 3 rolle report " + sys).out);
  CHECK(fnx("--seed 5 kappa " + temp_file("circle3.json", kCircle)).out ==
        fnx("--seed 5 kappa " + temp_file("circle3.json", kCircle)).out);
}

TEST_CASE("precision override") {
  setenv("FNX_PRECISION", "256", 1);
  auto r = nlohmann::json::parse(fnx("--json count " + data("quad.json")).out);
  unsetenv("FNX_PRECISION");
  CHECK(r["count"] == 1);
  CHECK(r["precision_bits"] == 256);
  CHECK(nlohmann::json::parse(fnx("--json count " + data("quad.json")).out)["precision_bits"] == 128);
}
