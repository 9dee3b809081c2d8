#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run_cli(const std::string& args, const std::string& env = {}) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path();
  fs::path out = dir / ("sqsieve_test_out_" + std::to_string(++counter));
  fs::path err = dir / ("sqsieve_test_err_" + std::to_string(counter));
  std::string cmd = env + (env.empty() ? "" : " ") + SQSIEVE_CLI_PATH + " " +
                    args + " >" + out.string() + " 2>" + err.string();
  int rc = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  res.out = slurp(out);
  res.err = slurp(err);
  fs::remove(out);
  fs::remove(err);
  return res;
}

}  // namespace

TEST_CASE("witness command emits the golden CSV") {
  auto res = run_cli("witness --m 2");
  CHECK(res.exit_code == 0);
  CHECK(res.out ==
        "q,a,discrepancy\n"
        "16,17,-1\n"
        "19,24,-1\n"
        "26,45,-1\n"
        "29,56,-1\n");
}

TEST_CASE("witness JSON carries the context fields") {
  auto res = run_cli("witness --m 2 --format json");
  REQUIRE(res.exit_code == 0);
  auto j = nlohmann::json::parse(res.out);
  CHECK(j["command"] == "witness");
  CHECK(j["m"] == 2);
  CHECK(j["Q"] == 15);
  REQUIRE(j["pairs"].size() == 4);
  CHECK(j["pairs"][0]["q"] == 16);
  CHECK(j["pairs"][0]["a"] == 17);
  CHECK(j["pairs"][0]["discrepancy"] == -1);
}

TEST_CASE("lemma exit code reflects the check") {
  CHECK(run_cli("lemma --m 2 --epsilon 0").exit_code == 1);
  CHECK(run_cli("lemma --m 2 --epsilon 0.5").exit_code == 0);
}

TEST_CASE("chain exit code asserts only the unconditional steps") {
  // Steps iii/iv fail at m=1 for small epsilon but are reported outcomes.
  CHECK(run_cli("chain --m 1 --epsilon 1").exit_code == 0);
  CHECK(run_cli("chain --m 2 --epsilon 0").exit_code == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("witness").exit_code == 2);           // missing --m
  CHECK(run_cli("witness --m 2 --bogus").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);                  // no subcommand
  CHECK(run_cli("enumerate --Q 2").exit_code == 2);   // domain error
  CHECK(run_cli("cluster --Q 15 --delta x/y").exit_code == 2);
  CHECK(run_cli("witness --m 2 --format xml").exit_code == 2);
  CHECK(run_cli("witness --m 2 -o /nonexistent-dir/x.csv").exit_code == 2);
}

TEST_CASE("resource guards exit with 3") {
  CHECK(run_cli("chain --m 4 --full").exit_code == 3);
  CHECK(run_cli("cluster --Q 3000 --delta 1000000").exit_code == 3);
}

TEST_CASE("chain full run reports the quadratic form over (Q, 2Q]") {
  auto res = run_cli("chain --m 1 --full --format json");
  REQUIRE(res.exit_code == 0);
  auto j = nlohmann::json::parse(res.out);
  CHECK(j["lhs_full"].get<double>() == doctest::Approx(120.0).epsilon(1e-9));
  CHECK(j["count_S"] == 5);
  CHECK(j["count_exact"] == true);
}

TEST_CASE("outputs are byte-identical across worker counts") {
  fs::path dir = fs::temp_directory_path();
  for (const std::string cmd :
       {std::string("chain --m 2 --full"),
        std::string("lhs --q-from 16 --q-to 30 --Q 15 --N 375")}) {
    std::string baseline;
    for (int workers : {1, 2, 8}) {
      fs::path out = dir / ("sqsieve_workers_" + std::to_string(workers));
      auto res =
          run_cli(cmd + " -w " + std::to_string(workers) + " -o " + out.string());
      REQUIRE(res.exit_code == 0);
      std::string bytes = slurp(out);
      fs::remove(out);
      if (workers == 1)
        baseline = bytes;
      else
        CHECK(bytes == baseline);
    }
    CHECK_FALSE(baseline.empty());
  }
}

TEST_CASE("worker count can come from the environment") {
  auto flag = run_cli("chain --m 2 --full -w 1");
  auto env = run_cli("chain --m 2 --full", "SQSIEVE_WORKERS=3");
  CHECK(env.exit_code == 0);
  CHECK(env.out == flag.out);
  CHECK(run_cli("chain --m 2 --full", "SQSIEVE_WORKERS=zero").exit_code == 2);
}

TEST_CASE("custom coefficient files feed the lhs command") {
  fs::path path = fs::temp_directory_path() / "sqsieve_cli_coeffs.txt";
  {
    std::ofstream out(path);
    out << "# two coefficients\n1 0\n0 1\n";
  }
  auto res = run_cli("lhs --q-from 2 --q-to 3 --coeffs file --coeff-file " +
                     path.string());
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("custom,spectrum,2,0,") != std::string::npos);

  auto geo = run_cli(
      "lhs --q-from 2 --q-to 3 --coeffs file --engine geometric "
      "--coeff-file " +
      path.string());
  CHECK(geo.exit_code == 2);
  fs::remove(path);
}

TEST_CASE("sharp command reports convergence") {
  auto res = run_cli("sharp --q-from 1 --q-to 4 --N 8 --format json");
  REQUIRE(res.exit_code == 0);
  auto j = nlohmann::json::parse(res.out);
  CHECK(j["R"] == 17);
  CHECK(j["converged"] == true);
  CHECK(j["lambda_max"].get<double>() ==
        doctest::Approx(24.639410298049846).epsilon(1e-6));
}
