// End-to-end checks of the command-line tool via subprocess runs.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  fs::path tmp = fs::temp_directory_path() / "multicut_cli_out.txt";
  std::string cmd = std::string(MULTICUT_CLI_PATH) + " " + args + " > " +
                    tmp.string() + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  std::ifstream in(tmp);
  std::ostringstream os;
  os << in.rdbuf();
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, os.str()};
}

std::string data(const std::string& name) {
  return std::string(MULTICUT_TEST_DATA) + "/" + name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("cli: solve the smallest fixture") {
  RunResult r = run_cli("solve kplanar " + data("path3.mc"));
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out == "weight 1\ncut 1 2\n");
}

TEST_CASE("cli: crossing solve of the annotated K5") {
  RunResult r = run_cli("solve crossing " + data("k5.mc"));
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.substr(0, 9) == "weight 4\n");
}

TEST_CASE("cli: kplanar refuses weighted instances with exit 1") {
  fs::path w = fs::temp_directory_path() / "weighted.mc";
  std::ofstream(w) << "n 3\nt 0\nt 2\ne 0 1 2\ne 1 2 1\nd 0 2\n";
  RunResult r = run_cli("solve kplanar " + w.string());
  REQUIRE(r.exit_code == 1);
}

TEST_CASE("cli: infeasible instances exit 2") {
  fs::path w = fs::temp_directory_path() / "blocked.mc";
  std::ofstream(w) << "n 2\nt 0\nt 1\ne 0 1 inf\nd 0 1\n";
  RunResult r = run_cli("solve oracle " + w.string());
  REQUIRE(r.exit_code == 2);
}

TEST_CASE("cli: generator reproduces the golden file byte for byte") {
  fs::path out = fs::temp_directory_path() / "golden_regen.mc";
  RunResult r = run_cli("gen --seed 1 --n 8 --t 3 --pi 0 --out " + out.string());
  REQUIRE(r.exit_code == 0);
  REQUIRE(slurp(out) == slurp(data("golden_seed1.mc")));
}

TEST_CASE("cli: generator parameter bounds") {
  REQUIRE(run_cli("gen --seed 1 --pi 5").exit_code == 1);
  REQUIRE(run_cli("gen --seed 1 --crossings 4").exit_code == 1);
  REQUIRE(run_cli("gen --seed 1 --n 65").exit_code == 1);
}

TEST_CASE("cli: verify accepts the solution and rejects tampering") {
  fs::path sol = fs::temp_directory_path() / "sol.txt";
  RunResult solved =
      run_cli("solve kplanar " + data("path3.mc") + " --out " + sol.string());
  REQUIRE(solved.exit_code == 0);
  REQUIRE(run_cli("verify " + data("path3.mc") + " " + sol.string()).exit_code ==
          0);

  // Tampered weight header.
  std::ofstream(sol) << "weight 2\ncut 1 2\n";
  REQUIRE(run_cli("verify " + data("path3.mc") + " " + sol.string()).exit_code !=
          0);
  // Missing cut edge.
  std::ofstream(sol) << "weight 0\n";
  REQUIRE(run_cli("verify " + data("path3.mc") + " " + sol.string()).exit_code !=
          0);
}

TEST_CASE("cli: bench runs a corpus and reports agreement") {
  fs::path dir = fs::temp_directory_path() / "multicut_bench";
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (int i = 0; i < 4; ++i) {
    RunResult g = run_cli("gen --seed " + std::to_string(100 + i) +
                          " --n 7 --t 3 --max-edges 11 --out " +
                          (dir / ("a" + std::to_string(i) + ".mc")).string());
    REQUIRE(g.exit_code == 0);
  }
  RunResult r = run_cli("bench " + dir.string());
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("agreement=") != std::string::npos);
  REQUIRE(r.out.find("agree=no") == std::string::npos);
  REQUIRE(r.out.find("failures=0") != std::string::npos);

  // Byte-identical reports across runs (no --times).
  RunResult r2 = run_cli("bench " + dir.string());
  REQUIRE(r2.out == r.out);

  // An oversized instance is rowed as oracle=skipped, not a failure.
  RunResult big = run_cli(
      "gen --seed 77 --n 20 --t 3 --density 1.0 --out " +
      (dir / "big.mc").string());
  REQUIRE(big.exit_code == 0);
  RunResult r3 = run_cli("bench " + dir.string());
  REQUIRE(r3.exit_code == 0);
  REQUIRE(r3.out.find("oracle=skipped") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli: bench of an empty corpus exits 0") {
  fs::path dir = fs::temp_directory_path() / "multicut_bench_empty";
  fs::remove_all(dir);
  fs::create_directories(dir);
  RunResult r = run_cli("bench " + dir.string());
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("instances=0") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli: dual-report emits the structural record") {
  RunResult r = run_cli("dual-report " + data("k5.mc"));
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("mu=") != std::string::npos);
  REQUIRE(r.out.find("tw_c_minus_fstar=") != std::string::npos);
  REQUIRE(r.out.find("claim_xbar_face=pass") != std::string::npos);
  REQUIRE(r.out.find("claim_degree3=pass") != std::string::npos);
}
