#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bellscope/families.hpp"
#include "bellscope/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

std::string binary_path() {
  const char* env = std::getenv("BELLSCOPE_BIN");
  REQUIRE_MESSAGE(env != nullptr, "BELLSCOPE_BIN must point at the CLI binary");
  return env;
}

std::string golden_dir() {
  const char* env = std::getenv("BELLSCOPE_GOLDEN_DIR");
  REQUIRE_MESSAGE(env != nullptr, "BELLSCOPE_GOLDEN_DIR must be set");
  return env;
}

CmdResult run_cli(const std::string& args) {
  const std::string cmd = binary_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult result;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
    result.out.append(buf, n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

class TempDir {
 public:
  TempDir() {
    dir_ = fs::temp_directory_path() /
           ("bellscope_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter_++));
    fs::create_directories(dir_);
  }
  ~TempDir() { fs::remove_all(dir_); }
  std::string file(const std::string& name) const {
    return (dir_ / name).string();
  }

 private:
  static inline int counter_ = 0;
  fs::path dir_;
};

void write(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  out << contents;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  const std::string missing = path + " should exist";
  REQUIRE_MESSAGE(in.good(), missing);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("gen + analyze on the qubit family") {
  TempDir tmp;
  const auto gen = run_cli("gen qubit -o " + tmp.file("q.json"));
  CHECK(gen.exit_code == 0);
  CHECK(gen.out.empty());

  const auto analyze = run_cli("analyze " + tmp.file("q.json"));
  REQUIRE(analyze.exit_code == 0);
  const json report = json::parse(analyze.out);
  CHECK(report["T"].get<double>() == doctest::Approx(8.0).epsilon(1e-9));
  CHECK(report["B"].get<double>() ==
        doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-6));
  CHECK(report["tight"].get<bool>());
  CHECK(report["d_prime"].get<int>() == 3);
  CHECK(report["realization"]["D"].get<int>() == 2);
  CHECK(report["version"].is_string());
  CHECK(report["seed"].get<int>() == 0);
}

TEST_CASE("analyze reports a non-tight instance without failing") {
  TempDir tmp;
  write(tmp.file("g.json"), R"({"g": [[1, 1], [1, 0]]})");
  const auto analyze = run_cli("analyze " + tmp.file("g.json"));
  REQUIRE(analyze.exit_code == 0);
  const json report = json::parse(analyze.out);
  CHECK(report["T"].get<double>() == doctest::Approx(3.23607).epsilon(1e-5));
  CHECK_FALSE(report["tight"].get<bool>());
  CHECK_FALSE(report.contains("d_prime"));
}

TEST_CASE("realize refuses non-tight input with exit code 3") {
  TempDir tmp;
  write(tmp.file("g.csv"), "1,1\n1,0\n");
  const auto result = run_cli("realize " + tmp.file("g.csv"));
  CHECK(result.exit_code == 3);
}

TEST_CASE("realize emits the correlation matrix for chsh") {
  TempDir tmp;
  write(tmp.file("chsh.csv"), "1,1\n1,-1\n");
  const auto result = run_cli("realize " + tmp.file("chsh.csv"));
  REQUIRE(result.exit_code == 0);
  const json report = json::parse(result.out);
  CHECK(report["D"].get<int>() == 2);
  CHECK(report["bell_value"].get<double>() ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-8));
  CHECK(report["correlations"].size() == 2);
}

TEST_CASE("identical invocations produce byte-identical stdout") {
  TempDir tmp;
  const auto gen = run_cli("gen witness 3 --seed 11 -o " + tmp.file("w.json"));
  REQUIRE(gen.exit_code == 0);
  const auto first = run_cli("analyze " + tmp.file("w.json") + " --seesaw --seed 4");
  const auto second = run_cli("analyze " + tmp.file("w.json") + " --seesaw --seed 4");
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK_FALSE(first.out.empty());
}

TEST_CASE("gen output round-trips to the in-memory generator exactly") {
  TempDir tmp;
  REQUIRE(run_cli("gen geq 4 -o " + tmp.file("geq.json")).exit_code == 0);
  const auto parsed = bellscope::io::parse_matrix(tmp.file("geq.json"));
  const auto direct = bellscope::families::greater_equal(4);
  CHECK((parsed.g - direct.matrix().g).cwiseAbs().maxCoeff() == 0.0);
  CHECK(parsed.label == direct.matrix().label);

  REQUIRE(run_cli("gen witness 4 --seed 9 -o " + tmp.file("w.json")).exit_code == 0);
  const auto wit = bellscope::io::parse_matrix(tmp.file("w.json"));
  const auto wit_direct = bellscope::families::random_dimension_witness(4, 9);
  CHECK((wit.g - wit_direct.matrix().g).cwiseAbs().maxCoeff() == 0.0);

  REQUIRE(run_cli("gen mermin 3 -o " + tmp.file("m.json")).exit_code == 0);
  const auto mer = bellscope::io::parse_tensor(tmp.file("m.json"));
  CHECK(mer.coeffs == bellscope::families::mermin(3).tensor().coeffs);
}

TEST_CASE("bound and local subcommands") {
  TempDir tmp;
  write(tmp.file("chsh.csv"), "1,1\n1,-1\n");
  const auto bound = run_cli("bound " + tmp.file("chsh.csv"));
  REQUIRE(bound.exit_code == 0);
  CHECK(json::parse(bound.out)["T"].get<double>() ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));
  const auto local = run_cli("local " + tmp.file("chsh.csv"));
  REQUIRE(local.exit_code == 0);
  CHECK(json::parse(local.out)["B"].get<double>() == 2.0);
}

TEST_CASE("tight subcommand reports the failure reason") {
  TempDir tmp;
  write(tmp.file("g.csv"), "1,1\n1,0\n");
  const auto result = run_cli("tight " + tmp.file("g.csv"));
  REQUIRE(result.exit_code == 0);
  const json report = json::parse(result.out);
  CHECK_FALSE(report["tight"].get<bool>());
  CHECK(report["failure_reason"].get<std::string>() == "system-unsolvable");
  CHECK(report["d"].get<int>() == 1);

  // solvable system whose quadric is indefinite (see the tightness suite)
  write(tmp.file("h.csv"),
        "0.80000000000000004,-0.029346081774060406\n"
        "0.53232108769789932,0.0664446613983663\n"
        "0.076612814256906914,-0.96940330569141586\n"
        "-0.26601642107915435,-0.23448058634079283\n");
  const auto indefinite = run_cli("tight " + tmp.file("h.csv"));
  REQUIRE(indefinite.exit_code == 0);
  const json ind_report = json::parse(indefinite.out);
  CHECK_FALSE(ind_report["tight"].get<bool>());
  CHECK(ind_report["failure_reason"].get<std::string>() == "X-not-psd");
}

TEST_CASE("enumeration guard trips with exit code 4") {
  TempDir tmp;
  REQUIRE(run_cli("gen fr 5 -o " + tmp.file("fr.json")).exit_code == 0);
  const auto result = run_cli("local " + tmp.file("fr.json") + " --max-enum 1024");
  CHECK(result.exit_code == 4);
}

TEST_CASE("malformed input exits with code 1") {
  TempDir tmp;
  write(tmp.file("bad.json"), R"({"g": [[1], [1, 2]]})");
  CHECK(run_cli("analyze " + tmp.file("bad.json")).exit_code == 1);
  CHECK(run_cli("bound /nonexistent/nowhere.json").exit_code == 1);
  CHECK(run_cli("gen nosuchfamily 3 -o " + tmp.file("x.json")).exit_code == 1);
  CHECK(run_cli("").exit_code == 1);
}

TEST_CASE("generator guard violations exit with code 3") {
  TempDir tmp;
  CHECK(run_cli("gen chsh-power 9 -o " + tmp.file("x.json")).exit_code == 3);
  CHECK(run_cli("gen mermin 40 -o " + tmp.file("x.json")).exit_code == 3);
}

TEST_CASE("multi subcommand with explicit pair and scan") {
  TempDir tmp;
  REQUIRE(run_cli("gen mermin 3 -o " + tmp.file("m.json")).exit_code == 0);

  const auto fixed = run_cli("multi " + tmp.file("m.json") + " --pair 1 2");
  REQUIRE(fixed.exit_code == 0);
  const json fixed_report = json::parse(fixed.out);
  CHECK(fixed_report["T"].get<double>() == 4.0);
  CHECK(fixed_report["B"].get<double>() == 2.0);

  const auto scan = run_cli("multi " + tmp.file("m.json") + " --scan");
  REQUIRE(scan.exit_code == 0);
  const json scan_report = json::parse(scan.out);
  CHECK(scan_report["best_pair"] == json::array({1, 2}));
  CHECK(scan_report["pairs"].size() == 3);
  CHECK(scan_report["T"].get<double>() == 4.0);
}

TEST_CASE("ellipsoid export") {
  TempDir tmp;
  REQUIRE(run_cli("gen geq 3 -o " + tmp.file("geq.json")).exit_code == 0);
  const auto result =
      run_cli("ellipsoid " + tmp.file("geq.json") + " -o " + tmp.file("pts.csv"));
  REQUIRE(result.exit_code == 0);

  const std::string csv = slurp(tmp.file("pts.csv"));
  CHECK(csv.rfind("set,index,c0,c1\n", 0) == 0);
  // six data rows: three per party
  int lines = 0;
  for (char ch : csv) {
    if (ch == '\n') ++lines;
  }
  CHECK(lines == 7);
  CHECK(csv.find("V,1,") != std::string::npos);
  CHECK(csv.find("W,3,") != std::string::npos);

  const json quadric = json::parse(slurp(tmp.file("pts.csv") + ".quadric.json"));
  CHECK(quadric["X"].size() == 2);
}

TEST_CASE("golden reports stay stable") {
  TempDir tmp;

  REQUIRE(run_cli("gen chsh-power 1 -o " + tmp.file("chsh.json")).exit_code == 0);
  const auto chsh = run_cli("analyze " + tmp.file("chsh.json"));
  REQUIRE(chsh.exit_code == 0);
  CHECK(chsh.out == slurp(golden_dir() + "/chsh_analyze.json"));

  REQUIRE(run_cli("gen qubit -o " + tmp.file("qubit.json")).exit_code == 0);
  const auto qubit = run_cli("analyze " + tmp.file("qubit.json"));
  REQUIRE(qubit.exit_code == 0);
  CHECK(qubit.out == slurp(golden_dir() + "/qubit_analyze.json"));

  REQUIRE(run_cli("gen mermin 3 -o " + tmp.file("mermin.json")).exit_code == 0);
  const auto mermin = run_cli("multi " + tmp.file("mermin.json"));
  REQUIRE(mermin.exit_code == 0);
  CHECK(mermin.out == slurp(golden_dir() + "/mermin_multi.json"));
}
