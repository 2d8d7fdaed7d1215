#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>

#include "copeland/bandit.hpp"
#include "copeland/copeland.hpp"
#include "copeland/datasets.hpp"
#include "copeland/divergence.hpp"
#include "copeland/errors.hpp"
#include "copeland/harness.hpp"
#include "copeland/solvers.hpp"

namespace copeland::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Source {
  std::string dataset;
  std::string input;
  bool allow_ties = false;
};

void add_source_options(CLI::App* cmd, Source& src) {
  auto* ds = cmd->add_option("--dataset", src.dataset, "built-in dataset name");
  auto* in = cmd->add_option("--input", src.input, "CSV preference matrix");
  ds->excludes(in);
  cmd->add_flag("--allow-ties", src.allow_ties, "accept entries equal to 1/2");
}

struct Loaded {
  std::string name;
  PreferenceMatrix matrix;
};

Loaded load_source(const Source& src) {
  MatrixOptions opts;
  opts.tie_tolerant = src.allow_ties;
  if (!src.dataset.empty()) return {src.dataset, builtin_dataset(src.dataset, opts)};
  if (!src.input.empty()) {
    return {fs::path(src.input).stem().string(), load_matrix_file(src.input, opts)};
  }
  throw ValidationError("one of --dataset or --input is required");
}

int default_max_arms() {
  if (const char* env = std::getenv(kMaxArmsEnv)) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(env, &used);
      if (used == std::string(env).size() && v >= 1) return v;
    } catch (const std::exception&) {
    }
    throw ValidationError(std::string(kMaxArmsEnv) + " must be a positive integer");
  }
  return kDefaultMaxArms;
}

// Three significant figures without exponent notation: 27.5, 49.7, 1600.
std::string sig3(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  if (v == 0.0) return "0";
  int digits = static_cast<int>(std::floor(std::log10(std::abs(v)))) + 1;
  const double scale = std::pow(10.0, digits - 3);
  const double rounded = std::round(v / scale) * scale;
  digits = static_cast<int>(std::floor(std::log10(std::abs(rounded)))) + 1;
  std::ostringstream os;
  os << std::fixed << std::setprecision(std::max(0, 3 - digits)) << rounded;
  return os.str();
}

std::string arm_list(const std::vector<Arm>& arms) {
  std::string s;
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(arms[i] + 1);
  }
  return s;
}

json exploration_json(const OptimalExploration& opt) {
  json rates = json::object();
  for (Pair p : distinct_pairs(opt.rates.num_arms())) rates[pair_key(p)] = opt.rates[p];
  return {{"winner", opt.winner + 1}, {"constant", opt.constant}, {"rates", rates}};
}

void write_atomically(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  fs::path tmp = path;
  tmp += ".part";
  std::error_code ec;
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorKind::kIo, "cannot open " + tmp.string() + " for writing");
    try {
      body(file);
      file.close();
      if (!file) throw Error(ErrorKind::kIo, "failed writing " + tmp.string());
    } catch (...) {
      file.close();
      fs::remove(tmp, ec);
      throw;
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::kIo, "cannot move output into " + path.string());
  }
}

// ---- bounds ---------------------------------------------------------------

int cmd_bounds(const Source& src, int max_arms, bool as_json, std::ostream& out) {
  const Loaded loaded = load_source(src);
  const PreferenceMatrix& m = loaded.matrix;
  if (m.size() < 2) throw ValidationError("bounds need K >= 2");
  const CopelandSummary s = copeland_summary(m, TieMode::kStrict);

  const WinnerConstant ecw = ecw_best(m);
  const OptimalExploration ecw_rates = ecw_optimal(m, ecw.winner);
  std::optional<OptimalExploration> lp;
  if (m.size() <= max_arms) {
    const WinnerConstant best = lower_bound(m, SolverOptions{max_arms});
    lp = lp_cw_optimal(m, best.winner, SolverOptions{max_arms});
  }
  const double eq9 = ecw_explicit_bound(m, ecw.winner);
  const double eq10 = ecw_worstcase_bound(m);
  const double ccb = ccb_bound(m);
  const bool multi = s.winner_count() >= 2;
  const bool equal = lp && std::abs(ecw.constant - lp->constant) <= 1e-6 * lp->constant;

  if (as_json) {
    json doc;
    doc["dataset"] = loaded.name;
    doc["num_arms"] = m.size();
    std::vector<int> winners;
    for (Arm w : s.winners) winners.push_back(w + 1);
    doc["summary"] = {{"losses", s.losses},
                      {"winners", winners},
                      {"winner_count", s.winner_count()},
                      {"min_loss", s.min_loss()},
                      {"condorcet", s.has_condorcet_winner()}};
    doc["lambda"] = lp ? exploration_json(*lp) : json(nullptr);
    if (!lp) doc["lambda_skipped"] = "K > K_max";
    doc["lambda_tilde"] = exploration_json(ecw_rates);
    doc["lambda_equals_lambda_tilde"] = lp ? json(equal) : json(nullptr);
    doc["eq9"] = eq9;
    doc["eq10"] = eq10;
    doc["ccb"] = ccb;
    out << doc.dump(2) << '\n';
    return kExitOk;
  }

  std::vector<std::string> losses;
  for (int l : s.losses) losses.push_back(std::to_string(l));
  out << "dataset   " << loaded.name << " (K=" << m.size() << ")\n";
  out << "losses    L = [";
  for (std::size_t i = 0; i < losses.size(); ++i) out << (i ? ", " : "") << losses[i];
  out << "]\n";
  out << "winners   {" << arm_list(s.winners) << "}  C=" << s.winner_count()
      << "  L(1)=" << s.min_loss()
      << "  Condorcet=" << (s.has_condorcet_winner() ? "yes" : "no") << '\n';
  if (lp) {
    out << "lambda    " << sig3(lp->constant) << "  (exact lower bound, winner "
        << lp->winner + 1 << ")\n";
  } else {
    out << "lambda    skipped (K > K_max)\n";
  }
  out << "lambda~   " << sig3(ecw.constant) << "  (efficient constant, winner "
      << ecw.winner + 1 << ")\n";
  if (lp && multi && equal) out << "lambda = lambda~  equal (C ≥ 2)\n";
  out << "eq9       " << sig3(eq9) << "  (explicit efficient bound, winner "
      << ecw.winner + 1 << ")\n";
  out << "eq10      " << sig3(eq10) << "  (winner-count free bound)\n";
  out << "ccb       " << sig3(ccb) << '\n';
  return kExitOk;
}

// ---- run ------------------------------------------------------------------

struct RunArgs {
  Source src;
  std::string algo = "ecw";
  double alpha = 3.0;
  double beta = 0.01;
  std::int64_t horizon = 10000;
  int runs = 1;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string output;
  std::string format = "csv";
  bool run_columns = false;
};

int cmd_run(const RunArgs& args, int max_arms, std::ostream& out) {
  const TraceFormat format = parse_trace_format(args.format);
  AlgorithmConfig config;
  config.alpha = args.alpha;
  config.beta = args.beta;
  config.variant = parse_variant(args.algo);
  config.seed = args.seed;
  config.max_arms = max_arms;
  config.validate();
  if (args.horizon < 1) throw ValidationError("--T must be >= 1");

  Loaded loaded = load_source(args.src);
  if (loaded.matrix.has_ties()) {
    throw Error(ErrorKind::kTiedPreference, "simulation needs a matrix without ties");
  }
  RegretTrace trace = simulate_batch(loaded.matrix, config, args.horizon, args.runs,
                                     args.seed, args.jobs);
  trace.meta.dataset = loaded.name;

  fs::path path = args.output;
  if (path.empty()) {
    path = trace_file_name(trace.meta, format);
  } else if (fs::is_directory(path)) {
    path /= trace_file_name(trace.meta, format);
  }
  write_atomically(path, [&](std::ostream& os) {
    write_trace(trace, os, format, args.run_columns);
  });

  const double final_mean = trace.mean.back();
  const double lambda_tilde = ecw_constant(loaded.matrix);
  const double log_t = std::log(static_cast<double>(args.horizon));
  out << "final mean R(T) = " << final_mean << " (std " << trace.std.back() << ", runs "
      << args.runs << ", T " << args.horizon << "); R(T)/(lambda~ ln T) = ";
  if (log_t > 0.0) {
    out << final_mean / (lambda_tilde * log_t);
  } else {
    out << "n/a";
  }
  out << "; trace " << path.string() << '\n';
  return kExitOk;
}

// ---- datasets / submatrix -------------------------------------------------

int cmd_datasets(bool as_json, std::ostream& out) {
  MatrixOptions opts;
  opts.tie_tolerant = true;
  json list = json::array();
  for (const std::string& name : builtin_dataset_names()) {
    const PreferenceMatrix m = builtin_dataset(name, opts);
    const CopelandSummary s = copeland_summary(m, TieMode::kTolerant);
    if (as_json) {
      list.push_back({{"name", name},
                      {"num_arms", m.size()},
                      {"winner_count", s.winner_count()},
                      {"min_loss", s.min_loss()},
                      {"condorcet", s.has_condorcet_winner()},
                      {"ties", m.has_ties()}});
      continue;
    }
    out << name << " K=" << m.size() << " C=" << s.winner_count()
        << " Condorcet=" << (s.has_condorcet_winner() ? "yes" : "no")
        << " L1=" << s.min_loss();
    if (m.has_ties()) out << " ties=yes";
    out << '\n';
  }
  if (as_json) out << list.dump(2) << '\n';
  return kExitOk;
}

struct SubmatrixArgs {
  Source src;
  int k = 0;
  double min_gap = 0.0;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_submatrix(const SubmatrixArgs& args, std::ostream& out) {
  const Loaded loaded = load_source(args.src);
  if (args.k < 1 || args.k > loaded.matrix.size()) {
    throw ValidationError("--k must lie in [1, K]");
  }
  if (!(args.min_gap >= 0.0)) throw ValidationError("--min-gap must be nonnegative");
  std::vector<Arm> arms;
  const PreferenceMatrix sub =
      sample_submatrix(loaded.matrix, args.k, args.min_gap, args.seed, &arms);
  auto emit = [&](std::ostream& os) {
    os << "# arms of " << loaded.name << ": " << arm_list(arms) << '\n';
    write_matrix(sub, os);
  };
  if (args.output.empty()) {
    emit(out);
  } else {
    write_atomically(args.output, emit);
  }
  return kExitOk;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kTiedPreference:
    case ErrorKind::kDomain:
    case ErrorKind::kParse:
    case ErrorKind::kValidation:
    case ErrorKind::kUnknownDataset:
    case ErrorKind::kNotAWinner:
      return kExitValidation;
    case ErrorKind::kTooLarge:
      return kExitTooLarge;
    case ErrorKind::kIo:
      return kExitIo;
    default:
      return kExitFailure;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Copeland dueling bandit workbench"};
  app.require_subcommand(1);
  int max_arms_flag = 0;
  app.add_option("--kmax", max_arms_flag,
                 "largest K for the exact LP (default 8, or $COPELAND_KMAX)")
      ->check(CLI::PositiveNumber);

  bool json_out = false;

  Source bounds_src;
  auto* bounds = app.add_subcommand("bounds", "regret constants and bounds of a matrix");
  add_source_options(bounds, bounds_src);
  bounds->add_flag("--json", json_out, "emit JSON");
  bounds->add_option("--kmax", max_arms_flag, "largest K for the exact LP")
      ->check(CLI::PositiveNumber);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Monte-Carlo regret simulation");
  add_source_options(run, run_args.src);
  run->add_option("--algo", run_args.algo, "cw | ecw | random")->capture_default_str();
  run->add_option("--alpha", run_args.alpha, "initial exploration scale")
      ->capture_default_str();
  run->add_option("--beta", run_args.beta, "near-tie guard scale")->capture_default_str();
  run->add_option("--T", run_args.horizon, "horizon")->capture_default_str();
  run->add_option("--runs", run_args.runs, "independent runs")->capture_default_str();
  run->add_option("--seed", run_args.seed, "master seed")->capture_default_str();
  run->add_option("--jobs", run_args.jobs, "worker threads")->capture_default_str();
  run->add_option("--output", run_args.output, "trace path or directory");
  run->add_option("--format", run_args.format, "csv | json")->capture_default_str();
  run->add_flag("--run-columns", run_args.run_columns, "add per-run columns to CSV");
  run->add_option("--kmax", max_arms_flag, "largest K for the cw variant")
      ->check(CLI::PositiveNumber);

  auto* datasets = app.add_subcommand("datasets", "list built-in matrices");
  datasets->add_flag("--json", json_out, "emit JSON");

  SubmatrixArgs sub_args;
  auto* submatrix = app.add_subcommand("submatrix", "sample a well-separated submatrix");
  add_source_options(submatrix, sub_args.src);
  submatrix->add_option("--k", sub_args.k, "arms to keep")->required();
  submatrix->add_option("--min-gap", sub_args.min_gap, "smallest allowed |mu - 1/2|")
      ->capture_default_str();
  submatrix->add_option("--seed", sub_args.seed, "sampling seed")->capture_default_str();
  submatrix->add_option("--output", sub_args.output, "CSV path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    const int max_arms = max_arms_flag > 0 ? max_arms_flag : default_max_arms();
    if (*bounds) return cmd_bounds(bounds_src, max_arms, json_out, out);
    if (*run) return cmd_run(run_args, max_arms, out);
    if (*datasets) return cmd_datasets(json_out, out);
    if (*submatrix) return cmd_submatrix(sub_args, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace copeland::cli
