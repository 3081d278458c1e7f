// End-to-end checks of the CLI surface: output bytes, exit codes, and
// the documented CSV/JSON shapes.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#ifndef NEWMAN_CLI_PATH
#error "NEWMAN_CLI_PATH must point at the newman binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(NEWMAN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("sum subcommand") {
  CHECK(run_cli("sum -q 2 -m 17 -l 0 -x 2^17").out == "697\n");
  CHECK(run_cli("sum -q 2 -m 3 -l 0 -x 8").out == "3\n");
  CHECK(run_cli("sum -q 2 -m 3 -l 0 -x 0").out == "0\n");
  CHECK(run_cli("sum -q 2 -m 3 -l 0 -x 10^5 --naive").out ==
        run_cli("sum -q 2 -m 3 -l 0 -x 10^5").out);
  CHECK(run_cli("sum -q 2 -m 3 -l 0 -x 8 --vector").out == "3,-3,0\n");
  CHECK(run_cli("sum -q 2 -m 7 -l 0 -x 128 --from 0").out == "-7\n");
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli("sum -q 2 -m 3 -l 0 -x nonsense").exit_code == 1);
  CHECK(run_cli("sum -q 1 -m 3 -l 0 -x 8").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("verify").exit_code == 1);          // no name, no --spec
  CHECK(run_cli("verify eq99").exit_code == 1);     // unknown name
  CHECK(run_cli("charpoly -q 2 -m 6").exit_code == 1);  // non-coprime
}

TEST_CASE("verify exit codes and report shape") {
  RunResult ok = run_cli("verify eq9 --samples 50");
  CHECK(ok.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(ok.out);
  CHECK(j["status"] == "verified");
  CHECK(j["samples_checked"] == 50);
  CHECK(j["meta"]["version"] == "newman 0.1.0");
  CHECK(j["meta"]["seed"] == 1);

  // A wrong-constant relation from a JSON spec file refutes with exit 2.
  const char* path = "cli_test_bad_relation.json";
  {
    std::ofstream f(path);
    f << R"({"q":2,"m":3,"l":0,"step":2,"divisibility":2,"coefficients":["0","-2","0","1"]})";
  }
  RunResult bad = run_cli(std::string("verify --spec ") + path);
  CHECK(bad.exit_code == 2);
  nlohmann::json jb = nlohmann::json::parse(bad.out);
  CHECK(jb["status"] == "refuted");
  CHECK(jb.contains("counterexample"));
  std::remove(path);
}

TEST_CASE("charpoly and divides") {
  CHECK(run_cli("charpoly -q 2 -m 1").out == "x\n");
  CHECK(run_cli("charpoly -q 2 -m 3").out == "x^3 - 3x\n");
  CHECK(run_cli("divides --p 0,-3,0,1 --r 0,9,0,-3,0,0,0,-3,0,1").out == "true\n");
  CHECK(run_cli("divides --p -1,1 --r 0,-3,0,1").out == "false\n");
}

TEST_CASE("discover routes") {
  RunResult sampled = run_cli("discover -q 2 -m 3 -l 0 --step 2 --div 2 --max-degree 5");
  CHECK(sampled.exit_code == 0);
  nlohmann::json js = nlohmann::json::parse(sampled.out);
  CHECK(js["status"] == "discovered");

  RunResult matrix = run_cli("discover -q 2 -m 9 -l 0 --route matrix");
  CHECK(matrix.exit_code == 0);
  nlohmann::json jm = nlohmann::json::parse(matrix.out);
  CHECK(jm["status"] == "discovered");
  CHECK(jm["coefficients"] == nlohmann::json({"0", "9", "0", "-3", "0", "0", "0", "-3", "0", "1"}));
  CHECK(jm["divisibility"] == 1);
}

TEST_CASE("conjecture scans emit documented CSV") {
  RunResult primes = run_cli("conjecture primes --max 13");
  CHECK(primes.exit_code == 0);
  CHECK(primes.out.rfind("# newman 0.1.0 | args: conjecture primes --max 13 | seed: 1\n", 0) == 0);
  CHECK(primes.out.find("p,a_p,divisible,pm,quotient,eventually_positive\n") != std::string::npos);
  CHECK(primes.out.find("\n7,-7,1,1,-1,0\n") != std::string::npos);

  RunResult aseq = run_cli("conjecture a-seq -n 17");
  CHECK(aseq.out == "697\n");

  RunResult pos = run_cli("conjecture positivity -q 2 -m 3 -l 0 --max 2^14");
  CHECK(pos.exit_code == 0);
  CHECK(pos.out.find("q,m,l,n_max,min_value,argmin,all_positive\n") != std::string::npos);
  CHECK(pos.out.find("2,3,0,16384,1,1,1\n") != std::string::npos);

  RunResult gel = run_cli("conjecture gelfond -m 3 --max 7 --checkpoints 1");
  CHECK(gel.out.find("x,g0,g1,rem0,rem1,rem0_exponent,rem1_exponent\n") != std::string::npos);
  CHECK(gel.out.find("7,3,0,11/6,-7/6,") != std::string::npos);
}

TEST_CASE("json format carries the reproducibility meta") {
  RunResult r = run_cli("conjecture exponent -q 2 -m 3 -l 0 --max 2^12 --format json");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["meta"]["args"] == "conjecture exponent -q 2 -m 3 -l 0 --max 2^12 --format json");
  CHECK(j["rows"].is_array());
  CHECK(!j["rows"].empty());
}

TEST_CASE("config file supplies defaults, flags win") {
  const char* path = "cli_test_config.ini";
  {
    std::ofstream f(path);
    f << "seed=9\n";
  }
  RunResult from_config = run_cli(std::string("--config ") + path + " verify eq9 --samples 10");
  CHECK(nlohmann::json::parse(from_config.out)["meta"]["seed"] == 9);
  RunResult flag_wins =
      run_cli(std::string("--config ") + path + " --seed 4 verify eq9 --samples 10");
  CHECK(nlohmann::json::parse(flag_wins.out)["meta"]["seed"] == 4);
  std::remove(path);
}

TEST_CASE("identical argument vectors give identical bytes") {
  std::string cmd = "conjecture ratio -m 7 -k 2 --max 2^16 --checkpoints 16 --seed 5";
  CHECK(run_cli(cmd).out == run_cli(cmd).out);
  std::string dcmd = "discover -q 2 -m 5 -l 0 --step 2 --div 2 --max-degree 7 --seed 3";
  CHECK(run_cli(dcmd).out == run_cli(dcmd).out);
}
