#include "copeland/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "copeland/copeland.hpp"
#include "copeland/errors.hpp"
#include "copeland/rng.hpp"

namespace copeland {

using nlohmann::json;

std::vector<std::int64_t> checkpoint_grid(std::int64_t horizon) {
  if (horizon < 1) throw ValidationError("horizon T must be >= 1");
  std::vector<std::int64_t> grid;
  for (int k = 0;; ++k) {
    // The small offset keeps exact powers of ten from rounding up.
    const auto c = static_cast<std::int64_t>(std::ceil(std::pow(10.0, k / 10.0) - 1e-9));
    if (c >= horizon) break;
    if (grid.empty() || grid.back() < c) grid.push_back(c);
  }
  grid.push_back(horizon);
  return grid;
}

RegretTrace simulate(const PreferenceMatrix& matrix, const AlgorithmConfig& config,
                     std::int64_t horizon, std::uint64_t run_seed) {
  const CopelandSummary summary = copeland_summary(matrix, TieMode::kStrict);
  RegretTrace trace;
  trace.checkpoints = checkpoint_grid(horizon);
  trace.meta.variant = config.variant;
  trace.meta.alpha = config.alpha;
  trace.meta.beta = config.beta;
  trace.meta.horizon = horizon;
  trace.meta.runs = 1;
  trace.meta.seed = run_seed;

  Duelist duelist(matrix.size(), config);
  Rng rng = make_rng(run_seed);
  RegretLedger ledger(summary);
  std::vector<double> path;
  path.reserve(trace.checkpoints.size());
  std::size_t next = 0;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const Pair pair = duelist.select(rng);
    std::optional<bool> outcome;
    if (!pair.is_self()) outcome = bernoulli(rng, matrix(pair.hi, pair.lo));
    duelist.observe(pair, outcome);
    ledger.record(pair);
    if (t == trace.checkpoints[next]) {
      path.push_back(ledger.cumulative());
      ++next;
    }
  }
  trace.runs.push_back(std::move(path));
  aggregate(trace);
  return trace;
}

void aggregate(RegretTrace& trace) {
  const std::size_t n = trace.checkpoints.size();
  const std::size_t runs = trace.runs.size();
  trace.mean.assign(n, 0.0);
  trace.std.assign(n, 0.0);
  if (runs == 0) return;
  for (std::size_t c = 0; c < n; ++c) {
    double sum = 0.0;
    for (const auto& run : trace.runs) sum += run.at(c);
    const double mean = sum / static_cast<double>(runs);
    trace.mean[c] = mean;
    if (runs > 1) {
      double sq = 0.0;
      for (const auto& run : trace.runs) sq += (run[c] - mean) * (run[c] - mean);
      trace.std[c] = std::sqrt(sq / static_cast<double>(runs - 1));
    }
  }
}

RegretTrace simulate_batch(const PreferenceMatrix& matrix, const AlgorithmConfig& config,
                           std::int64_t horizon, int runs, std::uint64_t master_seed,
                           int parallelism) {
  if (runs < 1) throw ValidationError("runs must be >= 1");
  if (parallelism < 1) throw ValidationError("parallelism must be >= 1");
  // Surface construction errors (TooLarge, bad config) before spawning.
  Duelist probe(matrix.size(), config);
  (void)probe;

  std::vector<std::vector<double>> paths(runs);
  std::vector<std::exception_ptr> failures(runs);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < runs; r = next++) {
      try {
        paths[r] = simulate(matrix, config, horizon, split_seed(master_seed, r)).runs[0];
      } catch (...) {
        failures[r] = std::current_exception();
      }
    }
  };
  const int threads = std::min(parallelism, runs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  RegretTrace trace;
  trace.meta.variant = config.variant;
  trace.meta.alpha = config.alpha;
  trace.meta.beta = config.beta;
  trace.meta.horizon = horizon;
  trace.meta.runs = runs;
  trace.meta.seed = master_seed;
  trace.checkpoints = checkpoint_grid(horizon);
  trace.runs = std::move(paths);
  aggregate(trace);
  return trace;
}

TraceFormat parse_trace_format(const std::string& name) {
  if (name == "csv") return TraceFormat::kCsv;
  if (name == "json") return TraceFormat::kJson;
  throw ValidationError("unknown trace format '" + name + "' (expected csv or json)");
}

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void check_shape(const RegretTrace& trace) {
  const std::size_t n = trace.checkpoints.size();
  if (n == 0) throw ValidationError("trace has no checkpoints");
  if (trace.mean.size() != n || trace.std.size() != n) {
    throw ValidationError("trace aggregate does not match its checkpoints");
  }
  for (const auto& run : trace.runs) {
    if (run.size() != n) throw ValidationError("trace run does not match its checkpoints");
  }
}

}  // namespace

void write_trace(const RegretTrace& trace, std::ostream& sink, TraceFormat format,
                 bool include_runs) {
  check_shape(trace);
  if (format == TraceFormat::kCsv) {
    sink << "checkpoint,mean_regret,std_regret";
    if (include_runs) {
      for (std::size_t r = 0; r < trace.runs.size(); ++r) sink << ",run_" << r;
    }
    sink << '\n';
    for (std::size_t c = 0; c < trace.checkpoints.size(); ++c) {
      sink << trace.checkpoints[c] << ',' << shortest(trace.mean[c]) << ','
           << shortest(trace.std[c]);
      if (include_runs) {
        for (const auto& run : trace.runs) sink << ',' << shortest(run[c]);
      }
      sink << '\n';
    }
  } else {
    json doc;
    doc["meta"] = {{"dataset", trace.meta.dataset},
                   {"variant", std::string(to_string(trace.meta.variant))},
                   {"alpha", trace.meta.alpha},
                   {"beta", trace.meta.beta},
                   {"horizon", trace.meta.horizon},
                   {"runs", trace.meta.runs},
                   {"seed", trace.meta.seed}};
    doc["checkpoints"] = trace.checkpoints;
    doc["mean"] = trace.mean;
    doc["std"] = trace.std;
    doc["cumulative_regret"] = trace.runs;
    sink << doc.dump(2) << '\n';
  }
  sink.flush();
  if (!sink) throw Error(ErrorKind::kIo, "failed to write trace");
}

RegretTrace read_trace_json(std::istream& source) {
  RegretTrace trace;
  try {
    const json doc = json::parse(source);
    const json& meta = doc.at("meta");
    trace.meta.dataset = meta.at("dataset").get<std::string>();
    trace.meta.variant = parse_variant(meta.at("variant").get<std::string>());
    trace.meta.alpha = meta.at("alpha").get<double>();
    trace.meta.beta = meta.at("beta").get<double>();
    trace.meta.horizon = meta.at("horizon").get<std::int64_t>();
    trace.meta.runs = meta.at("runs").get<int>();
    trace.meta.seed = meta.at("seed").get<std::uint64_t>();
    trace.checkpoints = doc.at("checkpoints").get<std::vector<std::int64_t>>();
    trace.mean = doc.at("mean").get<std::vector<double>>();
    trace.std = doc.at("std").get<std::vector<double>>();
    trace.runs = doc.at("cumulative_regret").get<std::vector<std::vector<double>>>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("trace JSON: ") + e.what());
  }
  check_shape(trace);
  return trace;
}

std::string trace_file_name(const TraceMeta& meta, TraceFormat format) {
  std::ostringstream name;
  name << meta.dataset << '_' << to_string(meta.variant) << "_T" << meta.horizon << "_r"
       << meta.runs << "_s" << meta.seed << (format == TraceFormat::kCsv ? ".csv" : ".json");
  return name.str();
}

}  // namespace copeland
