#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "lpsparse/generator.hpp"
#include "lpsparse/instance_io.hpp"

namespace fs = std::filesystem;
using namespace lpsparse;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Report rows without the trailing wall-time column.
std::vector<std::string> rows_without_time(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) rows.push_back(line.substr(0, line.rfind(',')));
  return rows;
}

struct TempDir {
  static inline int counter = 0;
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("lpsparse_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("gen is deterministic") {
  TempDir dir;
  REQUIRE(call({"gen", "--kind", "mixed", "--n", "1000", "--d", "3", "--seed", "7", "--out", dir / "a.json"}).code == 0);
  REQUIRE(call({"gen", "--kind", "mixed", "--n", "1000", "--d", "3", "--seed", "7", "--out", dir / "b.json"}).code == 0);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
}

TEST_CASE("generated feasible instances pass the nondegeneracy check") {
  TempDir dir;
  REQUIRE(call({"gen", "--kind", "feasible-nondegenerate", "--n", "500", "--d", "2", "--seed", "1", "--out", dir / "f.json"}).code == 0);
  const auto inst = read_instance(dir / "f.json");
  CHECK(has_unique_optimal_basis(std::get<LpInstance>(inst)));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(call({"gen", "--kind", "mixed", "--n", "0", "--d", "2"}).code == cli::kExitUsage);
  CHECK(call({"gen", "--kind", "nonsense", "--n", "5", "--d", "2"}).code == cli::kExitUsage);
  CHECK(call({}).code == cli::kExitUsage);
  CHECK(call({"sweep", "--algorithm", "qclarkson", "--d", "2", "--n", "10,abc"}).code == cli::kExitUsage);
  CHECK(call({"sweep", "--algorithm", "mpc", "--eps", "0.2", "--d", "2", "--n", "10", "--kind", "infeasible"}).code ==
        cli::kExitUsage);
}

TEST_CASE("solve reports a record") {
  TempDir dir;
  call({"gen", "--kind", "feasible-nondegenerate", "--n", "300", "--d", "2", "--seed", "4", "--out", dir / "f.json"});
  const auto r = call({"solve", "--algorithm", "clarkson", "--in", dir / "f.json", "--seed", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find(",Optimal,") != std::string::npos);
  CHECK(r.out.rfind(cli::csv_header(), 0) == 0);

  const auto missing = call({"solve", "--algorithm", "lowprec", "--in", dir / "f.json"});
  CHECK(missing.code == cli::kExitUsage);
  CHECK(missing.err.find("--eps") != std::string::npos);

  CHECK(call({"solve", "--algorithm", "mpc", "--eps", "0.2", "--in", dir / "f.json"}).code == cli::kExitUsage);
}

TEST_CASE("infeasible is a valid answer") {
  TempDir dir;
  call({"gen", "--kind", "infeasible", "--n", "100", "--d", "2", "--seed", "1", "--out", dir / "i.json"});
  const auto r = call({"solve", "--algorithm", "qclarkson", "--in", dir / "i.json"});
  CHECK(r.code == 0);
  CHECK(r.out.find(",Infeasible,") != std::string::npos);
}

TEST_CASE("a malformed instance is a usage error") {
  TempDir dir;
  std::ofstream(dir / "bad.json") << "{\"type\": \"lp\", \"n\": 2";
  const auto r = call({"solve", "--algorithm", "clarkson", "--in", dir / "bad.json"});
  CHECK(r.code == cli::kExitUsage);
}

TEST_CASE("parallel trials match serial trials") {
  TempDir dir;
  call({"gen", "--kind", "feasible-nondegenerate", "--n", "200", "--d", "2", "--seed", "2", "--out", dir / "f.json"});
  const auto serial = call({"solve", "--algorithm", "qlowprec1", "--eps", "0.3", "--in", dir / "f.json", "--trials", "4"});
  const auto parallel = call({"solve", "--algorithm", "qlowprec1", "--eps", "0.3", "--in", dir / "f.json", "--trials", "4", "--parallel", "4"});
  REQUIRE(serial.code == 0);
  CHECK(rows_without_time(serial.out) == rows_without_time(parallel.out));
}

TEST_CASE("sweep summary and reproducibility") {
  const std::vector<std::string> single{"sweep", "--algorithm", "qclarkson", "--d", "2", "--n", "200", "--trials", "2", "--seed", "1"};
  const auto a = call(single);
  REQUIRE(a.code == 0);
  CHECK(a.out.find("summary,slope,q_charge,n/a") != std::string::npos);
  CHECK(rows_without_time(a.out) == rows_without_time(call(single).out));

  const auto two = call({"sweep", "--algorithm", "clarkson", "--d", "2", "--n", "100,400", "--trials", "2", "--parallel", "2"});
  REQUIRE(two.code == 0);
  CHECK(two.out.find("summary,slope,row_reads,n/a") == std::string::npos);
  CHECK(two.out.find("summary,slope,row_reads,") != std::string::npos);
}

TEST_CASE("output files land in the configured directory") {
  TempDir dir;
  ::setenv(cli::kOutDirEnv, dir.path.c_str(), 1);
  const auto r = call({"sweep", "--algorithm", "qmpc", "--eps", "0.5", "--d", "2", "--n", "50", "--json", "sweep.json",
                       "--ledger", "charges.csv"});
  ::unsetenv(cli::kOutDirEnv);
  REQUIRE(r.code == 0);
  CHECK(slurp(dir / "report.csv").rfind(cli::csv_header(), 0) == 0);
  CHECK(slurp(dir / "sweep.json").find("\"records\"") != std::string::npos);
  CHECK(slurp(dir / "charges.csv").find("quantum_sampling") != std::string::npos);
}

TEST_CASE("log-log slope") {
  const std::vector<double> x{10, 100, 1000};
  const std::vector<double> y{3, 30, 300};
  CHECK(*cli::loglog_slope(x, y) == doctest::Approx(1.0));
  const std::vector<double> same{10, 10};
  const std::vector<double> vals{1, 2};
  CHECK_FALSE(cli::loglog_slope(same, vals));
}
