#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "glasner/glasner.hpp"

// Path of the built binary, injected by the build.
#ifndef GLASNER_CLI_PATH
#error "GLASNER_CLI_PATH must be defined"
#endif

namespace {

using nlohmann::json;

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(GLASNER_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  while (std::size_t n = fread(buffer, 1, sizeof buffer, pipe)) result.out.append(buffer, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_file(const std::string& name, const std::string& body) {
  const std::string dir = "/tmp/glasner_cli_test";
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("expsum eval matches the library bit for bit") {
  const auto r = run_cli("expsum eval --e 2 --q 5 --f 0,1");
  REQUIRE(r.exit_code == 0);
  const json record = json::parse(r.out);
  CHECK(record["command"] == "expsum eval");
  CHECK(record["inputs"]["q"] == 5);

  const auto value = glasner::eval_direct({2, 5, {0, 1}});
  CHECK(record["results"]["abs"].get<double>() == std::abs(value));
  CHECK(record["results"]["real"].get<double>() == value.real());
  CHECK(record["results"]["hua"].get<double>() == glasner::hua_bound(5, 2));
  CHECK(record["results"]["refined"].get<double>() ==
        glasner::refined_bound(glasner::decompose_modulus(5, 2)));
  CHECK(record["results"]["weil"].get<double>() == *glasner::weil_bound({2, 5, {0, 1}}));
  CHECK(record["results"]["content"] == 1);
  CHECK_FALSE(record.contains("timing_ms"));
}

TEST_CASE("output is byte-identical across runs") {
  const auto a = run_cli("expsum extremal --q 7 --e 2 --mode random --samples 200 --seed 42");
  const auto b = run_cli("expsum extremal --q 7 --e 2 --mode random --samples 200 --seed 42");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);

  const auto c = run_cli("glasner hq --set " +
                         write_file("hq.json", R"({"dim":1,"points":[["0/1"],["1/3"]]})"));
  const auto d = run_cli("glasner hq --set /tmp/glasner_cli_test/hq.json");
  REQUIRE(c.exit_code == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("timing is flag-gated") {
  const auto r = run_cli("--timing bounds k --d 1 --e 2 --H 1 --eps 0.1");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.out).contains("timing_ms"));
}

TEST_CASE("modulus decompose emits the named parts") {
  const auto r = run_cli("modulus decompose --q 1653750 --e 4");
  REQUIRE(r.exit_code == 0);
  const json record = json::parse(r.out);
  CHECK(record["results"]["q2"] == 98);
  CHECK(record["results"]["q3"] == 27);
  CHECK(record["results"]["q4"] == 625);

  const auto r2 = run_cli("modulus decompose --q 24 --e 2");
  const json record2 = json::parse(r2.out);
  CHECK(record2["results"]["q2"] == 3);
  CHECK(record2["results"]["q2full"] == 8);
}

TEST_CASE("bounds k emits the worked example") {
  const auto r = run_cli("bounds k --d 1 --e 2 --H 1 --eps 0.1");
  REQUIRE(r.exit_code == 0);
  const json record = json::parse(r.out);
  CHECK(record["results"]["prior"].get<double>() == glasner::k_bound_prior(1, 2, 1.0, 0.1));
  CHECK(record["results"]["new"].get<double>() == glasner::k_bound_new(1, 2, 1.0, 0.1));
  CHECK(record["results"]["r_opt"].get<double>() == glasner::r_opt(1, 2, 1.0, 0.1, 1.0));
  CHECK(record["results"]["M"] == 10);
}

TEST_CASE("bounds pipeline emits every envelope") {
  const auto r = run_cli("bounds pipeline --d 1 --e 2 --H 1 --eps 0.1 --R 1e5 --k 100");
  REQUIRE(r.exit_code == 0);
  const json record = json::parse(r.out);
  const auto expected = glasner::proof_pipeline_report(1, 2, 1.0, 0.1, 1e5, 100.0);
  CHECK(record["results"]["M"] == expected.box_m);
  CHECK(record["results"]["s1_envelope"].get<double>() == expected.s1_envelope);
  CHECK(record["results"]["s2_envelope"].get<double>() == expected.s2_envelope);
}

TEST_CASE("powerfull list and count") {
  const auto r = run_cli("powerfull list --nu 2 --lo 51 --hi 100");
  REQUIRE(r.exit_code == 0);
  const json record = json::parse(r.out);
  CHECK(record["results"]["members"] == json::array({64, 72, 81, 100}));
  CHECK(record["results"]["count"] == 4);

  const auto csv = run_cli("powerfull list --nu 2 --lo 51 --hi 100 --format csv");
  CHECK(csv.out == "member\n64\n72\n81\n100\n");

  const auto count = run_cli("powerfull count --nu 5 --hi 31");
  CHECK(json::parse(count.out)["results"]["count"] == 1);
}

TEST_CASE("glasner search on the worked example") {
  const auto set = write_file("set7.json", R"({"dim":1,"points":[["1/7"],["2/7"],["3/7"]]})");
  const auto mx = write_file("mx.json", R"({"dim":1,"entries":[[[0,1]]]})");
  const auto r = run_cli("glasner search --matrix " + mx + " --set " + set +
                         " --eps 0.22 --nmax 7");
  REQUIRE(r.exit_code == 0);
  const json record = json::parse(r.out);
  CHECK(record["results"]["minimal_n"] == 2);
  CHECK(record["results"]["trace"][0]["covering_radius"] == "5/14");
  CHECK(record["results"]["trace"][1]["covering_radius"] == "3/14");

  const auto threaded = run_cli("--threads 3 glasner search --matrix " + mx + " --set " + set +
                                " --eps 0.22 --nmax 7");
  CHECK(threaded.out == r.out);
}

TEST_CASE("glasner functional honors the GLASNER_BUDGET override") {
  const auto set = write_file("f.json", R"({"dim":1,"points":[["0/1"],["1/3"]]})");
  const auto mx = write_file("fm.json", R"({"dim":1,"entries":[[[0,1]]]})");
  const auto ok = run_cli("glasner functional --matrix " + mx + " --set " + set + " --eps 0.25");
  REQUIRE(ok.exit_code == 0);
  const json record = json::parse(ok.out);
  CHECK(record["results"]["rhs"].get<double>() ==
        Catch::Approx(112.0).epsilon(1e-9));
  CHECK(record["results"]["M"] == 4);

  const auto starved = run_cli(
      "glasner functional --matrix " + mx + " --set " + set + " --eps 0.25",
      "GLASNER_BUDGET=4");
  CHECK(starved.exit_code == 3);

  const auto invalid = run_cli(
      "glasner functional --matrix " + mx + " --set " + set + " --eps 0.25",
      "GLASNER_BUDGET=not-a-number");
  CHECK(invalid.exit_code == 2);
}

TEST_CASE("glasner check-matrix reports witnesses") {
  const auto degenerate = write_file("deg.json", R"({"dim":2,"entries":[[[0,1],[0]],[[0],[0]]]})");
  const auto r = run_cli("glasner check-matrix --matrix " + degenerate + " --box 3");
  REQUIRE(r.exit_code == 0);
  const json record = json::parse(r.out);
  REQUIRE_FALSE(record["results"]["witness"].is_null());
  CHECK(record["results"]["degree"] == 1);

  const auto clear = write_file("clear.json", R"({"dim":1,"entries":[[[0,1]]]})");
  const auto r2 = run_cli("glasner check-matrix --matrix " + clear + " --box 5");
  CHECK(json::parse(r2.out)["results"]["witness"].is_null());
}

TEST_CASE("torus density certifies in both dimensions") {
  const auto line = write_file("line.json", R"({"dim":1,"points":[["0/1"],["1/4"],["1/2"],["3/4"]]})");
  const auto r = run_cli("torus density --set " + line + " --eps 0.25");
  REQUIRE(r.exit_code == 0);
  const json record = json::parse(r.out);
  CHECK(record["results"]["verdict"] == "dense");
  CHECK(record["results"]["covering_radius"] == "1/8");

  const auto plane = write_file("plane.json", R"({"dim":2,"points":[["0/1","0/1"]]})");
  const auto r2 = run_cli("torus density --set " + plane + " --eps 0.5 --mesh 0.05");
  const json record2 = json::parse(r2.out);
  CHECK(record2["results"]["verdict"] == "not-dense");

  // Covering radius just above eps (about 0.5028): starting from a coarse
  // mesh, six halvings still leave the margin wider than the gap, and the
  // Unknown verdict is reported as such.
  const auto edge = write_file("edge.json",
                               R"({"dim":2,"points":[["0/1","0/1"],["1/2","1/4"]]})");
  const auto r3 = run_cli("torus density --set " + edge + " --eps 0.5 --mesh 0.5");
  const json record3 = json::parse(r3.out);
  CHECK(record3["results"]["verdict"] == "unknown");
  CHECK(record3["results"]["rounds"] == 6);
}

TEST_CASE("exit codes distinguish validation from budget") {
  CHECK(run_cli("expsum eval --e 2 --q 5 --f 0,1 --no-such-flag").exit_code == 2);
  CHECK(run_cli("expsum eval --e 2 --q 5").exit_code == 2);
  CHECK(run_cli("expsum eval --e 2 --q 0 --f 0,1").exit_code == 2);
  CHECK(run_cli("expsum eval --e 2 --q 5 --f 0,1,2").exit_code == 2);
  CHECK(run_cli("expsum eval --e 2 --q 5 --f a,b").exit_code == 2);
  CHECK(run_cli("expsum eval --e 2 --q 200000000 --f 0,1 --method direct").exit_code == 3);
  CHECK(run_cli("expsum extremal --q 10000 --e 2").exit_code == 3);
  CHECK(run_cli("torus density --set /nonexistent.json --eps 0.5").exit_code == 2);
  const auto bad = write_file("bad.json", R"({"dim":1,"points":[["2/4"]]})");
  CHECK(run_cli("torus density --set " + bad + " --eps 0.5").exit_code == 2);
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}
