#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "copeland/harness.hpp"
#include "copeland/preference_matrix.hpp"

namespace fs = std::filesystem;
using copeland::cli::run_cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "copeland");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "copeland_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("bounds on cyclic") {
  const auto r = cli({"bounds", "--dataset", "cyclic"});
  CHECK(r.code == 0);
  CHECK(r.out.find("lambda    27.5 ") != std::string::npos);
  CHECK(r.out.find("lambda~   49.7 ") != std::string::npos);
  CHECK(r.out.find("ccb       1600\n") != std::string::npos);
  CHECK(r.out.find("eq9       248 ") != std::string::npos);
  CHECK(r.out.find("eq10      298 ") != std::string::npos);
  CHECK(r.out.find("L = [0, 2, 2, 2]") != std::string::npos);
}

TEST_CASE("bounds json") {
  const auto r = cli({"bounds", "--dataset", "cyclic", "--json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(std::abs(doc["lambda"]["constant"].get<double>() - 27.55) < 0.2);
  CHECK(std::abs(doc["lambda_tilde"]["constant"].get<double>() - 49.66) < 0.05);
  CHECK(doc["lambda_tilde"]["winner"] == 1);
  CHECK(std::abs(doc["lambda_tilde"]["rates"]["2-1"].get<double>() - 49.6635) < 1e-3);
  CHECK(doc["lambda_tilde"]["rates"]["3-2"].get<double>() == 0.0);
  CHECK(doc["lambda_tilde"]["rates"].size() == 6);
  CHECK(doc["summary"]["losses"] == nlohmann::json::array({0, 2, 2, 2}));
  CHECK(std::abs(doc["ccb"].get<double>() - 1600.0) < 1e-9);
}

TEST_CASE("bounds on multisol flags equality") {
  const auto r = cli({"bounds", "--dataset", "multisol"});
  CHECK(r.code == 0);
  CHECK(r.out.find("equal (C ≥ 2)") != std::string::npos);
  CHECK(cli({"bounds", "--dataset", "cyclic"}).out.find("equal") == std::string::npos);
}

TEST_CASE("bounds from a csv file") {
  const auto path = scratch("2x2.csv");
  std::ofstream(path) << "0.5,0.6\n0.4,0.5\n";
  const auto r = cli({"bounds", "--input", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("lambda    24.8 ") != std::string::npos);
  CHECK(r.out.find("lambda~   24.8 ") != std::string::npos);
}

TEST_CASE("bounds degrade above K_max") {
  const auto r = cli({"bounds", "--dataset", "sushi"});
  CHECK(r.code == 0);
  CHECK(r.out.find("lambda    skipped (K > K_max)") != std::string::npos);
  CHECK(r.out.find("lambda~   ") != std::string::npos);

  const auto j = cli({"bounds", "--dataset", "sushi", "--json"});
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["lambda"].is_null());

  setenv("COPELAND_KMAX", "3", 1);
  CHECK(cli({"bounds", "--dataset", "cyclic"}).out.find("skipped") != std::string::npos);
  CHECK(cli({"bounds", "--dataset", "cyclic", "--kmax", "4"}).out.find("skipped") ==
        std::string::npos);
  setenv("COPELAND_KMAX", "zero", 1);
  CHECK(cli({"bounds", "--dataset", "cyclic"}).code == 2);
  unsetenv("COPELAND_KMAX");
}

TEST_CASE("datasets listing") {
  const auto r = cli({"datasets"});
  CHECK(r.code == 0);
  CHECK(r.out.find("cyclic K=4 C=1 Condorcet=yes") != std::string::npos);
  CHECK(r.out.find("multisol K=5 C=3 Condorcet=no") != std::string::npos);
  CHECK(r.out.find("sushi K=16 C=1 Condorcet=yes") != std::string::npos);
  CHECK(r.out.find("ties=yes") != std::string::npos);
  const auto j = nlohmann::json::parse(cli({"datasets", "--json"}).out);
  CHECK(j.size() == 7);
}

TEST_CASE("run writes a trace") {
  const auto dir = scratch("runs");
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto r = cli({"run", "--algo", "random", "--dataset", "cyclic", "--T", "10000", "--runs",
                      "20", "--output", dir.string()});
  REQUIRE(r.code == 0);
  const auto path = dir / "cyclic_random_T10000_r20_s0.csv";
  REQUIRE(fs::exists(path));
  CHECK(r.out.find("final mean R(T) = ") != std::string::npos);
  std::ifstream in(path);
  std::string header, line, last;
  std::getline(in, header);
  CHECK(header == "checkpoint,mean_regret,std_regret");
  while (std::getline(in, line)) last = line;
  CHECK(last.rfind("10000,", 0) == 0);
  const double mean = std::stod(last.substr(6));
  CHECK(std::abs(mean - 5000.0) < 150.0);

  const auto json_path = dir / "t.json";
  CHECK(cli({"run", "--dataset", "gap", "--T", "300", "--runs", "2", "--format", "json",
             "--output", json_path.string()})
            .code == 0);
  std::ifstream jin(json_path);
  const auto trace = copeland::read_trace_json(jin);
  CHECK(trace.meta.dataset == "gap");
  CHECK(trace.meta.horizon == 300);
}

TEST_CASE("error exit codes") {
  CHECK(cli({"run", "--algo", "cw", "--dataset", "sushi", "--T", "10"}).code == 3);
  CHECK(cli({"bounds", "--dataset", "nope"}).code == 2);
  CHECK(cli({"bounds", "--dataset", "arxiv", "--allow-ties"}).code == 2);
  CHECK(cli({"bounds", "--input", "/nonexistent/m.csv"}).code == 4);
  CHECK(cli({"bounds"}).code == 2);
  CHECK(cli({"bounds", "--dataset", "cyclic", "--input", "x.csv"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"run", "--dataset", "cyclic", "--algo", "rucb"}).code == 2);
  CHECK(cli({"run", "--dataset", "cyclic", "--alpha", "0"}).code == 2);
  CHECK(cli({"--help"}).code == 0);

  // A run whose output cannot be placed leaves nothing behind.
  const auto missing = scratch("no_such_dir") / "t.csv";
  fs::remove_all(missing.parent_path());
  CHECK(cli({"run", "--dataset", "cyclic", "--T", "10", "--output", missing.string()}).code == 4);
  CHECK_FALSE(fs::exists(missing.parent_path()));
}

TEST_CASE("submatrix") {
  const auto sushi = scratch("sushi.csv");
  CHECK(cli({"submatrix", "--dataset", "sushi", "--k", "16", "--output", sushi.string()}).code ==
        0);
  const auto out = scratch("sub8.csv");
  CHECK(cli({"submatrix", "--input", sushi.string(), "--k", "8", "--min-gap", "0.005", "--seed",
             "1", "--output", out.string()})
            .code == 0);
  const auto m = copeland::load_matrix_file(out.string());
  CHECK(m.size() == 8);
  CHECK(m.min_gap() >= 0.005);

  const auto stdout_run =
      cli({"submatrix", "--dataset", "sushi", "--k", "8", "--min-gap", "0.005", "--seed", "1"});
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(stdout_run.out == buf.str());

  CHECK(cli({"submatrix", "--dataset", "cyclic", "--k", "3", "--min-gap", "0.45"}).code == 1);
  CHECK(cli({"submatrix", "--dataset", "cyclic", "--k", "9"}).code == 2);
}
