#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::string cmd = shell_quote(DRINFELD_CLI_PATH);
  for (const std::string& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST_CASE("carlitz torsion over F_3 at T^2+1") {
  RunResult r = run_cli({"torsion", "--q", "3", "--phi", "T+t", "--modulus", "T^2+1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["payload"]["module"] == "t+T");
  CHECK(j["payload"]["totalDegree"] == 8);
  CHECK(j["payload"]["points"] == 9);
  CHECK(j["payload"]["split"] == true);
  CHECK(j["config"]["seed"] == 1);
  CHECK(j["command"] == "torsion");
  CHECK(j["wallSeconds"].is_number());
}

TEST_CASE("galois-order is the compact form") {
  RunResult r =
      run_cli({"galois-order", "--q", "3", "--phi", "T+t", "--modulus", "T^2+1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["payload"]["totalDegree"] == 8);
  CHECK(!j["payload"].contains("levels"));
}

TEST_CASE("config errors exit with 2") {
  CHECK(run_cli({"galois-order", "--q", "5", "--phi", "T+t", "--modulus", "T"}).code == 2);
  CHECK(run_cli({"galois-order", "--q", "3", "--phi", "T+%", "--modulus", "T"}).code == 2);
  CHECK(run_cli({"galois-order", "--q", "3", "--phi", "T+t"}).code == 2);
  CHECK(run_cli({"galois-order", "--q", "3", "--phi", "T+t", "--modulus",
                 "T^2+2*T+1"}).code == 2);  // reducible modulus
  CHECK(run_cli({"torsion", "--q", "3", "--phi", "2+t", "--modulus", "T"}).code == 2);
  CHECK(run_cli({"torsion", "--phi", "T+t", "--modulus", "T"}).code == 2);  // no --q
  CHECK(run_cli({"bogus-subcommand"}).code == 2);
  CHECK(run_cli({"witness", "--q", "2", "--g2", "T", "--format", "yaml"}).code == 2);
}

TEST_CASE("witness payload matches the documented example") {
  RunResult r = run_cli({"witness", "--q", "2", "--g1", "0", "--g2", "T"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["payload"]["kind"] == "TwoConstant");
  CHECK(j["payload"]["provesNonsurjective"] == true);
  CHECK(j["payload"]["moduli"].size() == 2);
}

TEST_CASE("verify-groups payloads") {
  RunResult r = run_cli({"verify-groups", "--lemma", "5.5"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["payload"]["subspaceCount"] == 212);
  CHECK(j["payload"]["invariant"].size() == 4);

  RunResult g = run_cli({"verify-groups", "--lemma", "gl2f2"});
  REQUIRE(g.code == 0);
  json jg = json::parse(g.out);
  CHECK(jg["payload"]["order"] == 6);
  CHECK(jg["payload"]["index2Subgroups"] == 1);
}

TEST_CASE("identical runs produce identical payloads") {
  std::vector<std::string> args = {"witness", "--q", "2", "--g1", "0", "--g2", "T+1"};
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  json ja = json::parse(a.out), jb = json::parse(b.out);
  CHECK(ja["payload"].dump() == jb["payload"].dump());
  CHECK(ja["config"].dump() == jb["config"].dump());
}

TEST_CASE("frobenius carries the charpoly and the mod-ell block") {
  RunResult r = run_cli({"frobenius", "--q", "3", "--phi", "T+t+2*T^2*t^2", "--prime",
                         "T+1", "--modulus", "T"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["payload"]["a"] == "1");
  CHECK(j["payload"]["mu"] == 1);
  CHECK(j["payload"]["modL"]["pattern"].is_array());
  CHECK(j["payload"]["modL"]["matrix"].is_string());
}

TEST_CASE("entangle reports per-modulus descriptors and the claim rows") {
  RunResult r = run_cli({"entangle", "--q", "3", "--g1", "1", "--g2", "1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["payload"]["descriptors"].size() == 3);
  CHECK(j["payload"]["claimCheck"]["allDistinct"] == true);
}

TEST_CASE("csv output and --out files") {
  RunResult r = run_cli({"verify-groups", "--lemma", "gl2f2", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("key,value\n", 0) == 0);
  CHECK(r.out.find("payload/order,6") != std::string::npos);

  std::string path = "/tmp/drinfeld_cli_test_out.json";
  RunResult w = run_cli({"verify-groups", "--lemma", "gl2f2", "--out", path});
  REQUIRE(w.code == 0);
  CHECK(w.out.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  json j;
  f >> j;
  CHECK(j["payload"]["order"] == 6);
  std::remove(path.c_str());
}

TEST_CASE("image certificate comes back well formed") {
  RunResult r = run_cli({"image", "--q", "2", "--g1", "T", "--g2", "1", "--modulus",
                         "T", "--max-deg", "4"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["payload"]["verdict"].is_string());
  CHECK(j["payload"]["sampled"].is_array());
  CHECK(!j["payload"]["sampled"].empty());
  CHECK(j["payload"]["conventions"].is_string());
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({}).code == 0);
}
