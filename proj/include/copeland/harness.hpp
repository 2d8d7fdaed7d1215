#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "copeland/bandit.hpp"
#include "copeland/preference_matrix.hpp"

namespace copeland {

struct TraceMeta {
  std::string dataset;
  Variant variant = Variant::kEcw;
  double alpha = 3.0;
  double beta = 0.01;
  std::int64_t horizon = 0;
  int runs = 0;
  std::uint64_t seed = 0;

  bool operator==(const TraceMeta&) const = default;
};

struct RegretTrace {
  TraceMeta meta;
  std::vector<std::int64_t> checkpoints;
  std::vector<std::vector<double>> runs;  // runs[r][c]: R at checkpoints[c]
  std::vector<double> mean;
  std::vector<double> std;  // sample standard deviation, 0 for a single run

  bool operator==(const RegretTrace&) const = default;
};

// {ceil(10^(k/10)) : k >= 0} below T, then T.
std::vector<std::int64_t> checkpoint_grid(std::int64_t horizon);

// Single run with the given stream seed; meta.runs = 1, meta.seed = run_seed.
RegretTrace simulate(const PreferenceMatrix& matrix, const AlgorithmConfig& config,
                     std::int64_t horizon, std::uint64_t run_seed);

// Run r uses split_seed(master_seed, r). Output does not depend on
// `parallelism`.
RegretTrace simulate_batch(const PreferenceMatrix& matrix, const AlgorithmConfig& config,
                           std::int64_t horizon, int runs, std::uint64_t master_seed,
                           int parallelism = 1);

// Fills mean/std from runs.
void aggregate(RegretTrace& trace);

enum class TraceFormat { kCsv, kJson };

TraceFormat parse_trace_format(const std::string& name);  // "csv" | "json"

// Throws ValidationError on an empty or ragged trace, Error(kIo) on a bad
// sink.
void write_trace(const RegretTrace& trace, std::ostream& sink, TraceFormat format,
                 bool include_runs = false);
RegretTrace read_trace_json(std::istream& source);

// {dataset}_{variant}_T{T}_r{runs}_s{seed}.{ext}
std::string trace_file_name(const TraceMeta& meta, TraceFormat format);

}  // namespace copeland
