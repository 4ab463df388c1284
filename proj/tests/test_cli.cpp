// End-to-end tests for the qmcli binary.  The harness passes the binary path
// in the QMCLI environment variable; every invocation here checks the exit
// status and the JSON report contract {version, config, checks, summary}.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <qma/mat.hpp>
#include <qma/scalar.hpp>
#include <qma/solutions.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

using nlohmann::json;
using namespace qma;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("QMCLI");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>cli_stderr.txt";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t m;
  while ((m = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, m);
  int st = pclose(p);
  RunResult r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.out = out;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_matrix_file(const std::string& path, const Mat& A) {
  json j;
  j["n"] = A.rows;
  json rows = json::array();
  for (int i = 0; i < A.rows; ++i) {
    json row = json::array();
    for (int k = 0; k < A.cols; ++k) row.push_back(A.at(i, k).str());
    rows.push_back(row);
  }
  j["entries"] = rows;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

// Counts and basic shape shared by every report.
void check_report_shape(const json& rep) {
  CHECK(rep.at("version") == "1.0.0");
  CHECK(rep.contains("config"));
  CHECK(rep.at("checks").is_array());
  const json& s = rep.at("summary");
  int pass = 0, fail = 0, skip = 0;
  for (const json& c : rep.at("checks")) {
    std::string r = c.at("result");
    if (r == "pass") ++pass;
    if (r == "fail") ++fail;
    if (r == "skipped") ++skip;
    CHECK(c.contains("check"));
    CHECK(c.contains("params"));
    CHECK(c.contains("witnesses"));
  }
  CHECK(s.at("passed") == pass);
  CHECK(s.at("failed") == fail);
  CHECK(s.at("skipped") == skip);
}

}  // namespace

TEST_CASE("hecke over a size range") {
  RunResult r = run_cli("verify hecke --n 2..4");
  CHECK(r.code == 0);
  json rep = json::parse(r.out);
  check_report_shape(rep);
  REQUIRE(rep.at("checks").size() == 3);
  int n = 2;
  for (const json& c : rep.at("checks")) {
    CHECK(c.at("check") == "hecke");
    CHECK(c.at("params").at("n") == std::to_string(n++));
    CHECK(c.at("result") == "pass");
    CHECK(c.at("witnesses").empty());
  }
  CHECK(rep.at("summary").at("failed") == 0);
}

TEST_CASE("reports are byte-stable for a fixed config and seed") {
  RunResult a = run_cli("verify yang-baxter --n 2..3 --out cli_a.json");
  RunResult b = run_cli("verify yang-baxter --n 2..3 --out cli_b.json");
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(slurp("cli_a.json") == slurp("cli_b.json"));

  // An existing output file is only replaced under --force.
  RunResult c = run_cli("verify yang-baxter --n 2..3 --out cli_a.json");
  CHECK(c.code == 2);
  RunResult d = run_cli("verify yang-baxter --n 2..3 --out cli_a.json --force");
  CHECK(d.code == 0);
}

TEST_CASE("graded dimension table for the braided matrix algebra") {
  RunResult r = run_cli("dims --algebra re --n 2 --max-degree 4");
  CHECK(r.code == 0);
  json rep = json::parse(r.out);
  check_report_shape(rep);
  REQUIRE(rep.at("checks").size() == 5);
  const long expected[5] = {1, 4, 10, 20, 35};
  int k = 0;
  for (const json& c : rep.at("checks")) {
    CHECK(c.at("check") == "dims");
    CHECK(c.at("bound") == 4);
    CHECK(c.at("degree") == k);
    CHECK(c.at("dim") == expected[k]);
    CHECK(c.at("classical") == expected[k]);
    CHECK(c.at("match") == true);
    CHECK(c.at("result") == "pass");
    ++k;
  }
}

TEST_CASE("orbit dimension tables against the classical samplers") {
  RunResult r = run_cli("dims --algebra symmetric-orbit");
  CHECK(r.code == 0);
  json rep = json::parse(r.out);
  const long expected[5] = {1, 3, 5, 7, 9};  // graded slices of 1,4,9,16,25
  int k = 0;
  REQUIRE(rep.at("checks").size() == 5);
  for (const json& c : rep.at("checks")) {
    CHECK(c.at("dim") == expected[k]);
    CHECK(c.at("match") == true);
    ++k;
  }

  RunResult rb = run_cli("dims --algebra bisymmetric-orbit");
  CHECK(rb.code == 0);
  json repb = json::parse(rb.out);
  const long expb[4] = {1, 8, 35, 111};  // graded slices of 1,9,44,155
  k = 0;
  REQUIRE(repb.at("checks").size() == 4);
  for (const json& c : repb.at("checks")) {
    CHECK(c.at("dim") == expb[k]);
    CHECK(c.at("match") == true);
    ++k;
  }
}

TEST_CASE("semiclassical subcommand emits tables and passing checks") {
  RunResult r = run_cli("poisson --n 2");
  CHECK(r.code == 0);
  json rep = json::parse(r.out);
  check_report_shape(rep);
  REQUIRE(rep.contains("tables"));
  const json& t = rep.at("tables").at(0);
  CHECK(t.at("n") == 2);
  CHECK(t.at("brackets").at("1,2|2,1") == "2*x11*x22 - 2*x22^2");
  CHECK(t.at("brackets").at("1,1|2,2") == "0");
  bool saw_jacobi = false;
  for (const json& c : rep.at("checks")) {
    CHECK(c.at("result") == "pass");
    if (c.at("check") == "poisson-jacobi") saw_jacobi = true;
  }
  CHECK(saw_jacobi);
  CHECK(rep.at("summary").at("failed") == 0);
}

TEST_CASE("matrix files are checked against presentations") {
  // diag(l1, 0) is a braided-commutation point.
  Mat d(2, 2);
  d.at(0, 0) = Scalar::symbol(SymL1);
  write_matrix_file("cli_diag.json", d);
  RunResult r = run_cli("check-matrix cli_diag.json --against re");
  CHECK(r.code == 0);
  json rep = json::parse(r.out);
  CHECK(rep.at("checks").at(0).at("result") == "pass");

  // The all-ones matrix is not; the report must carry a witness.
  Mat ones(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ones.at(i, j) = Scalar(1);
  write_matrix_file("cli_ones.json", ones);
  RunResult rf = run_cli("check-matrix cli_ones.json --against re");
  CHECK(rf.code == 1);
  json repf = json::parse(rf.out);
  CHECK(repf.at("checks").at(0).at("result") == "fail");
  CHECK(!repf.at("checks").at(0).at("witnesses").empty());
  CHECK(repf.at("summary").at("failed") == 1);
}

TEST_CASE("serialized family members round-trip through check-matrix") {
  Scalar a = Scalar::symbol(SymA), b = Scalar::symbol(SymB);
  Mat A = solution_symmetric(2, 1, 1, a * a, b * b, a * b);
  write_matrix_file("cli_family.json", A);
  CHECK(run_cli("check-matrix cli_family.json --against re").code == 0);
  CHECK(run_cli("check-matrix cli_family.json --against symmetric-orbit")
            .code == 0);

  IndexPair step;
  step.y = {0};
  step.z = {1};
  Mat N = solution_triangular(2, step, 0, Scalar(0));
  write_matrix_file("cli_nil.json", N);
  CHECK(run_cli("check-matrix cli_nil.json --against nilpotent-orbit").code ==
        0);
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run_cli("verify bogus").code == 2);
  CHECK(run_cli("verify hecke --n 9").code == 2);
  CHECK(run_cli("verify hecke --n 2..x").code == 2);
  CHECK(run_cli("verify trp --n 3").code == 2);
  CHECK(run_cli("verify hecke --max-degree 3").code == 2);
  CHECK(run_cli("verify all --max-degree 3").code == 2);
  CHECK(run_cli("dims --algebra nosuch").code == 2);
  CHECK(run_cli("dims --algebra bisymmetric-orbit --n 2").code == 2);
  CHECK(run_cli("").code == 2);

  std::ofstream("cli_garbage.json") << "not json";
  CHECK(run_cli("check-matrix cli_garbage.json --against re").code == 2);
  std::ofstream("cli_badentry.json")
      << "{\"n\": 2, \"entries\": [[\"1+\", \"0\"], [\"0\", \"1\"]]}";
  CHECK(run_cli("check-matrix cli_badentry.json --against re").code == 2);
  CHECK(run_cli("check-matrix cli_missing.json --against re").code == 2);
}

TEST_CASE("single lemma checks honor their pinned defaults") {
  RunResult r = run_cli("verify fiber");
  CHECK(r.code == 0);
  json rep = json::parse(r.out);
  CHECK(rep.at("checks").size() == 3);  // trace lemma, pair lemma, fiber map
  CHECK(rep.at("summary").at("failed") == 0);

  RunResult g = run_cli("verify gl2");
  CHECK(g.code == 0);
  json repg = json::parse(g.out);
  CHECK(repg.at("checks").size() == 1);
  CHECK(repg.at("checks").at(0).at("result") == "pass");
}

TEST_CASE("full suite over sizes 2..3 passes") {
  RunResult r = run_cli("verify all --n 2..3 --out cli_all.json --force");
  CHECK(r.code == 0);
  json rep = json::parse(slurp("cli_all.json"));
  check_report_shape(rep);
  CHECK(rep.at("summary").at("failed") == 0);
  CHECK(rep.at("summary").at("passed").get<int>() > 40);

  // The suite touches every check family.
  std::set<std::string> names;
  for (const json& c : rep.at("checks"))
    names.insert(c.at("check").get<std::string>());
  for (const char* want :
       {"hecke", "yang-baxter", "re-solution-symmetric",
        "re-solution-triangular", "dims", "orbit-character",
        "poisson-jacobi", "poisson-consistency"})
    CHECK(names.count(want) == 1);
}
