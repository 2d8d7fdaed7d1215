#include <doctest.h>

#include <cmath>
#include <sstream>

#include "copeland/datasets.hpp"
#include "copeland/errors.hpp"
#include "copeland/harness.hpp"

using namespace copeland;

namespace {

AlgorithmConfig config_for(Variant v) {
  AlgorithmConfig c;
  c.variant = v;
  return c;
}

std::string serialise(const RegretTrace& t, TraceFormat f, bool runs = false) {
  std::ostringstream os;
  write_trace(t, os, f, runs);
  return os.str();
}

}  // namespace

TEST_CASE("checkpoint grid") {
  CHECK(checkpoint_grid(1) == std::vector<std::int64_t>{1});
  CHECK(checkpoint_grid(100) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 7, 8, 10, 13, 16, 20,
                                                           26, 32, 40, 51, 64, 80, 100});
  const auto g = checkpoint_grid(123456);
  CHECK(g.back() == 123456);
  CHECK(std::find(g.begin(), g.end(), 1000) != g.end());
  CHECK(std::find(g.begin(), g.end(), 100000) != g.end());
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i - 1] < g[i]);
  CHECK_THROWS_AS(checkpoint_grid(0), ValidationError);
}

TEST_CASE("single round") {
  const auto m = builtin_dataset("cyclic");
  for (Variant v : {Variant::kCw, Variant::kEcw}) {
    const auto t = simulate(m, config_for(v), 1, 3);
    CHECK(t.checkpoints == std::vector<std::int64_t>{1});
    CHECK(t.runs[0][0] == doctest::Approx(1.0 / 3.0));  // first draw is (2,1)
  }
  const auto r = simulate(m, config_for(Variant::kRandom), 1, 3);
  CHECK(r.runs[0][0] >= 0.0);
  CHECK(r.runs[0][0] <= 1.0);
}

TEST_CASE("random baseline tracks the mean pair regret") {
  const auto m = builtin_dataset("cyclic");
  const auto t = simulate_batch(m, config_for(Variant::kRandom), 10000, 20, 1, 2);
  CHECK(std::abs(t.mean.back() - 5000.0) < 150.0);
}

TEST_CASE("batch bookkeeping") {
  const auto m = builtin_dataset("cyclic");
  const auto c = config_for(Variant::kEcw);
  const auto one = simulate_batch(m, c, 2000, 1, 42, 1);
  const auto single = simulate(m, c, 2000, split_seed(42, 0));
  CHECK(one.runs == single.runs);
  CHECK(one.mean == single.runs[0]);
  CHECK(one.std == std::vector<double>(one.checkpoints.size(), 0.0));
  CHECK(one.meta.seed == 42);
  CHECK(one.meta.runs == 1);

  const auto serial = simulate_batch(m, c, 2000, 6, 42, 1);
  const auto parallel = simulate_batch(m, c, 2000, 6, 42, 4);
  CHECK(serial == parallel);
  CHECK(serialise(serial, TraceFormat::kJson) == serialise(parallel, TraceFormat::kJson));

  for (std::size_t i = 0; i < serial.checkpoints.size(); ++i) {
    double sum = 0.0;
    for (const auto& run : serial.runs) sum += run[i];
    CHECK(serial.mean[i] == sum / 6.0);
  }
  for (const auto& run : serial.runs) {
    for (std::size_t i = 1; i < run.size(); ++i) CHECK(run[i - 1] <= run[i]);
  }
  // Different runs see different streams.
  CHECK(serial.runs[0] != serial.runs[1]);
}

TEST_CASE("batch errors") {
  const auto m = builtin_dataset("cyclic");
  CHECK_THROWS_AS(simulate_batch(m, config_for(Variant::kEcw), 10, 0, 1), ValidationError);
  try {
    simulate_batch(builtin_dataset("sushi"), config_for(Variant::kCw), 10, 2, 1);
    FAIL("no size gate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kTooLarge);
  }
}

TEST_CASE("trace output") {
  const auto m = builtin_dataset("cyclic");
  auto t = simulate_batch(m, config_for(Variant::kEcw), 500, 3, 9, 1);
  t.meta.dataset = "cyclic";

  const std::string csv = serialise(t, TraceFormat::kCsv);
  CHECK(csv.substr(0, csv.find('\n')) == "checkpoint,mean_regret,std_regret");
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        static_cast<long>(t.checkpoints.size() + 1));
  const std::string wide = serialise(t, TraceFormat::kCsv, true);
  CHECK(wide.substr(0, wide.find('\n')) == "checkpoint,mean_regret,std_regret,run_0,run_1,run_2");

  std::istringstream in(serialise(t, TraceFormat::kJson));
  CHECK(read_trace_json(in) == t);

  CHECK(trace_file_name(t.meta, TraceFormat::kCsv) == "cyclic_ecw_T500_r3_s9.csv");
  CHECK(trace_file_name(t.meta, TraceFormat::kJson) == "cyclic_ecw_T500_r3_s9.json");

  RegretTrace empty;
  std::ostringstream sink;
  CHECK_THROWS_AS(write_trace(empty, sink, TraceFormat::kCsv), ValidationError);
  CHECK(sink.str().empty());

  std::ostringstream broken;
  broken.setstate(std::ios::badbit);
  try {
    write_trace(t, broken, TraceFormat::kCsv);
    FAIL("bad sink accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kIo);
  }
}

TEST_CASE("seed determinism") {
  const auto m = builtin_dataset("gap");
  const auto c = config_for(Variant::kEcw);
  CHECK(simulate(m, c, 3000, 5) == simulate(m, c, 3000, 5));
  CHECK(simulate(m, c, 3000, 5) != simulate(m, c, 3000, 6));
}
